//! Finite abelian groups given by explicit elements.

use std::collections::HashSet;
use std::hash::Hash;

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors `n_1 | n_2 | ⋯` (ascending, all `> 1`) of a finite
/// abelian group, from the multiset of its element orders.
pub fn invariant_factors(element_orders: &[u64]) -> Vec<u64> {
    let size = element_orders.len() as u64;
    let mut factors: Vec<u64> = Vec::new();
    for p in prime_factors(size) {
        // d_k = #{cyclic p-factors of exponent ≥ k} = log_p N_k − log_p N_{k−1}.
        let mut exps: Vec<u32> = Vec::new();
        let mut prev_log = 0u32;
        let mut k = 1u32;
        loop {
            let pk = p.pow(k);
            let n_k = element_orders
                .iter()
                .filter(|&&o| pk % o == 0)
                .count() as u64;
            let log = n_k.ilog(p);
            let d_k = log - prev_log;
            if d_k == 0 {
                break;
            }
            // Each factor with exponent ≥ k contributes one to d_k.
            if exps.len() < d_k as usize {
                exps.resize(d_k as usize, 0);
            }
            for e in exps.iter_mut().take(d_k as usize) {
                *e = k;
            }
            prev_log = log;
            k += 1;
        }
        // exps is descending; combine largest with largest.
        for (i, &e) in exps.iter().enumerate() {
            if i >= factors.len() {
                factors.push(1);
            }
            factors[i] *= p.pow(e);
        }
    }
    factors.sort_unstable();
    factors
}

/// Generators `g_i` of orders equal to the invariant factors such that
/// `∏ Z/n_i → G, (m_i) ↦ ∏ g_i^{m_i}` is an isomorphism. Elements are
/// searched in the given order, so the choice is deterministic.
pub fn cyclic_decomposition<T, F>(elements: &[T], identity: &T, mul: F) -> (Vec<u64>, Vec<T>)
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let order = |x: &T| -> u64 {
        let mut k = 1;
        let mut cur = x.clone();
        while cur != *identity {
            cur = mul(&cur, x);
            k += 1;
        }
        k
    };
    let orders: Vec<u64> = elements.iter().map(order).collect();
    let factors = invariant_factors(&orders);
    let mut chosen: Vec<T> = Vec::new();
    let ok = search(elements, &orders, &factors, identity, &mul, &mut chosen);
    assert!(ok, "abelian group has a cyclic decomposition");
    (factors, chosen)
}

fn span<T, F>(gens: &[T], orders: &[u64], identity: &T, mul: &F) -> HashSet<T>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut set = HashSet::from([identity.clone()]);
    for (g, &n) in gens.iter().zip(orders) {
        let current: Vec<T> = set.iter().cloned().collect();
        let mut power = identity.clone();
        for _ in 1..n {
            power = mul(&power, g);
            for x in &current {
                set.insert(mul(x, &power));
            }
        }
    }
    set
}

fn search<T, F>(
    elements: &[T],
    orders: &[u64],
    factors: &[u64],
    identity: &T,
    mul: &F,
    chosen: &mut Vec<T>,
) -> bool
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let k = chosen.len();
    if k == factors.len() {
        return span(chosen, factors, identity, mul).len() == elements.len();
    }
    for (x, &o) in elements.iter().zip(orders) {
        if o != factors[k] {
            continue;
        }
        chosen.push(x.clone());
        let size: u64 = factors[..=k].iter().product();
        if span(chosen, &factors[..=k], identity, mul).len() as u64 == size
            && search(elements, orders, factors, identity, mul, chosen)
        {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_of_small_groups() {
        assert_eq!(invariant_factors(&[1]), Vec::<u64>::new());
        assert_eq!(invariant_factors(&[1, 2]), vec![2]);
        assert_eq!(invariant_factors(&[1, 2, 2, 2]), vec![2, 2]);
        assert_eq!(invariant_factors(&[1, 2, 4, 4]), vec![4]);
        // Z/2 × Z/6
        let mut orders = Vec::new();
        for a in 0..2u64 {
            for b in 0..6u64 {
                let oa = if a == 0 { 1 } else { 2 };
                let ob = 6 / num_integer::gcd(b, 6);
                orders.push(num_integer::lcm(oa, ob));
            }
        }
        assert_eq!(invariant_factors(&orders), vec![2, 6]);
    }

    #[test]
    fn decomposition_of_klein_group() {
        let elems: Vec<(u8, u8)> = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
        let mul = |a: &(u8, u8), b: &(u8, u8)| ((a.0 + b.0) % 2, (a.1 + b.1) % 2);
        let (f, g) = cyclic_decomposition(&elems, &(0, 0), mul);
        assert_eq!(f, vec![2, 2]);
        assert_eq!(g.len(), 2);
        assert_ne!(g[0], g[1]);
    }

    #[test]
    fn decomposition_of_z6() {
        let elems: Vec<u8> = (0..6).collect();
        let (f, g) = cyclic_decomposition(&elems, &0, |a, b| (a + b) % 6);
        assert_eq!(f, vec![6]);
        assert!(g[0] == 1 || g[0] == 5);
    }
}
