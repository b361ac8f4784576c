use cycpres::acceptance::run_criterion;

fn criterion(id: u8) {
    let result = run_criterion(id);
    println!("{result}");
    assert!(result.passed, "{result}");
}

#[test]
fn criterion_1_fixture_classification() {
    criterion(1);
}

#[test]
fn criterion_2_micro_fixtures() {
    criterion(2);
}

#[test]
fn criterion_3_star_graph_oracle() {
    criterion(3);
}

#[test]
fn criterion_4_refinement_soundness() {
    criterion(4);
}

#[test]
fn criterion_5_girth_bounds() {
    criterion(5);
}

#[test]
fn criterion_6_m_forcing() {
    criterion(6);
}

#[test]
fn criterion_7_perfect_difference_sets() {
    criterion(7);
}

#[test]
fn criterion_8_heawood_recognition() {
    criterion(8);
}

#[test]
fn criterion_9_group_flags() {
    criterion(9);
}
