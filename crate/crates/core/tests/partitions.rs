use std::collections::HashMap;

use charvar::partitions::{enumerate, Partition};

fn all_up_to(n: u32) -> impl Iterator<Item = Partition> {
    (0..=n).flat_map(enumerate)
}

#[test]
fn conjugation_is_an_involution() {
    for l in all_up_to(10) {
        assert_eq!(l.conjugate().conjugate(), l);
        assert_eq!(l.conjugate().size(), l.size());
    }
}

#[test]
fn self_pairing_counts_n_lambda() {
    for l in all_up_to(8) {
        assert_eq!(l.pairing(&l), 2 * l.n_lambda() + l.size() as u64, "{l}");
    }
}

#[test]
fn hook_sum() {
    for l in all_up_to(10) {
        let total: u64 = l.hooks().iter().map(|&h| h as u64).sum();
        assert_eq!(total, l.n_lambda() + l.conjugate().n_lambda() + l.size() as u64, "{l}");
    }
}

#[test]
fn boxes_have_consistent_hooks() {
    for l in all_up_to(10) {
        let boxes = l.boxes();
        assert_eq!(boxes.len() as u32, l.size());
        assert!(boxes.iter().all(|b| b.hook == b.arm + b.leg + 1));
    }
}

#[test]
fn conjugation_swaps_arms_and_legs() {
    for l in all_up_to(10) {
        let mut a: HashMap<(u32, u32), u32> = HashMap::new();
        for b in l.boxes() {
            *a.entry((b.leg, b.arm)).or_default() += 1;
        }
        let mut c: HashMap<(u32, u32), u32> = HashMap::new();
        for b in l.conjugate().boxes() {
            *c.entry((b.arm, b.leg)).or_default() += 1;
        }
        assert_eq!(a, c, "{l}");
    }
}

#[test]
fn pairing_is_symmetric() {
    let ps: Vec<_> = all_up_to(6).collect();
    for a in &ps {
        for b in &ps {
            assert_eq!(a.pairing(b), b.pairing(a));
        }
    }
}

#[test]
fn enumeration_has_no_duplicates() {
    for n in 0..=10 {
        let ps = enumerate(n);
        let mut sorted = ps.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ps.len());
        assert!(ps.iter().all(|p| p.size() == n));
    }
}
