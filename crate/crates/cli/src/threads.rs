//! Deterministic fan-out over independent work items.
//!
//! Results land in input order regardless of scheduling, so downstream
//! serialization is byte-identical for any worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub fn parallel_map_indexed<T, F>(n_items: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = threads.max(1).min(n_items.max(1));
    if threads <= 1 || n_items <= 1 {
        return (0..n_items).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<T>>> = (0..n_items).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= n_items {
                    break;
                }
                let value = f(k);
                *slots[k].lock().unwrap() = Some(value);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("worker filled every slot"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_input_order_regardless_of_threads() {
        let square = |k: usize| k * k;
        for threads in [1, 2, 4, 8] {
            let got = parallel_map_indexed(17, threads, square);
            let want: Vec<usize> = (0..17).map(square).collect();
            assert_eq!(got, want, "threads = {threads}");
        }
    }
}
