use std::collections::BTreeMap;
use std::sync::Mutex;

struct State<T> {
    next: usize,
    pending: BTreeMap<usize, T>,
}

/// Accepts results tagged with a sequence number from any thread and hands
/// them to `sink` strictly in sequence order.
pub struct ReorderBuffer<T, F: FnMut(T)> {
    state: Mutex<(State<T>, F)>,
}

impl<T, F: FnMut(T)> ReorderBuffer<T, F> {
    pub fn new(sink: F) -> Self {
        ReorderBuffer {
            state: Mutex::new((
                State {
                    next: 0,
                    pending: BTreeMap::new(),
                },
                sink,
            )),
        }
    }

    /// Stores item `seq` and flushes every item that is now contiguous.
    pub fn insert(&self, seq: usize, item: T) {
        let mut guard = self.state.lock().expect("reorder buffer poisoned");
        let (state, sink) = &mut *guard;
        assert!(seq >= state.next, "sequence number {seq} already emitted");
        let previous = state.pending.insert(seq, item);
        assert!(previous.is_none(), "sequence number {seq} inserted twice");
        while let Some(item) = state.pending.remove(&state.next) {
            sink(item);
            state.next += 1;
        }
    }

    /// Number of items emitted so far.
    pub fn emitted(&self) -> usize {
        self.state.lock().expect("reorder buffer poisoned").0.next
    }

    /// Returns the sink; panics if items are still waiting for a gap.
    pub fn finish(self) -> F {
        let (state, sink) = self.state.into_inner().expect("reorder buffer poisoned");
        assert!(state.pending.is_empty(), "reorder buffer finished with gaps");
        sink
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    #[test]
    fn emits_in_order() {
        let mut seen = Vec::new();
        let buffer = ReorderBuffer::new(|x: usize| seen.push(x));
        for seq in [2, 0, 3, 1, 4] {
            buffer.insert(seq, seq * 10);
        }
        assert_eq!(buffer.emitted(), 5);
        let _ = buffer.finish();
        assert_eq!(seen, [0, 10, 20, 30, 40]);
    }

    #[test]
    fn concurrent_insertion() {
        let mut seen = Vec::new();
        let buffer = ReorderBuffer::new(|x: usize| seen.push(x));
        (0..1000usize).into_par_iter().rev().for_each(|i| buffer.insert(i, i));
        let _ = buffer.finish();
        assert_eq!(seen, (0..1000).collect::<Vec<_>>());
    }

    #[test]
    #[should_panic(expected = "gaps")]
    fn gap_detected() {
        let buffer = ReorderBuffer::new(|_: u8| {});
        buffer.insert(1, 0);
        let _ = buffer.finish();
    }
}
