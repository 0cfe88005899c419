//! Exact tensor-multiplicity computations for SL_N and Sp_N, plus the
//! set-partition combinatorics used in the moment expansions.
//!
//! `sl_multiplicity(N, m, n)` is the multiplicity of the trivial representation
//! of SL_N in dual-Std^{⊗m} ⊗ Std^{⊗n}; `sp_multiplicity(N, m)` the analogue
//! for Sp_N in Std^{⊗m}. Both are computed by a dynamic program over weight
//! multisets driven by the multiplicity-free Pieri rule for the standard
//! representation. All arithmetic is exact 64-bit with overflow checks.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Documented cap on the number of tensor steps.
pub const STEP_CAP: u32 = 12;

fn checked_acc(map: &mut HashMap<Vec<i32>, u64>, key: Vec<i32>, mult: u64) -> Result<()> {
    let slot = map.entry(key).or_insert(0);
    *slot = slot.checked_add(mult).ok_or(Error::Overflow)?;
    Ok(())
}

/// Multiplicity of the trivial representation of SL_N in
/// dual-Std^{⊗m} ⊗ Std^{⊗n}.
///
/// Weights are tracked in GL_N coordinates (nonincreasing integer vectors,
/// possibly negative); a Std step adds 1 to one coordinate, a dual-Std step
/// subtracts 1, in both cases keeping the vector nonincreasing. Tensor
/// commutativity makes the step order immaterial; all n up-steps are applied
/// first, then all m down-steps. The trivial class is the constant vector.
pub fn sl_multiplicity(rank: u32, m: u32, n: u32) -> Result<u64> {
    if rank < 2 {
        return Err(Error::CapExceeded { got: rank as u64, cap: 1 });
    }
    let steps = m + n;
    if steps > STEP_CAP {
        return Err(Error::CapExceeded { got: steps as u64, cap: STEP_CAP as u64 });
    }
    let nn = rank as usize;
    let mut state: HashMap<Vec<i32>, u64> = HashMap::new();
    state.insert(vec![0; nn], 1);
    for _ in 0..n {
        state = pieri_step(&state, nn, 1)?;
    }
    for _ in 0..m {
        state = pieri_step(&state, nn, -1)?;
    }
    let total = n as i64 - m as i64;
    if total.rem_euclid(rank as i64) != 0 {
        return Ok(0);
    }
    let c = (total / rank as i64) as i32;
    Ok(state.get(&vec![c; nn]).copied().unwrap_or(0))
}

/// One Pieri step: add (dir = +1) or subtract (dir = -1) a single unit from
/// one coordinate of every weight, keeping vectors nonincreasing.
fn pieri_step(state: &HashMap<Vec<i32>, u64>, n: usize, dir: i32) -> Result<HashMap<Vec<i32>, u64>> {
    let mut next = HashMap::with_capacity(state.len() * n);
    for (w, &mult) in state {
        for i in 0..n {
            let ok = if dir > 0 {
                i == 0 || w[i - 1] > w[i]
            } else {
                i == n - 1 || w[i] > w[i + 1]
            };
            if ok {
                let mut v = w.clone();
                v[i] += dir;
                checked_acc(&mut next, v, mult)?;
            }
        }
    }
    Ok(next)
}

/// Multiplicity of the trivial representation of Sp_N (N even) in Std^{⊗m}.
///
/// States are partitions with at most N/2 rows; each Std step adds or removes
/// exactly one box (multiplicity-free symplectic Pieri rule for the vector
/// representation).
pub fn sp_multiplicity(rank: u32, m: u32) -> Result<u64> {
    if rank % 2 != 0 || rank == 0 {
        return Err(Error::OddRank(rank));
    }
    if m > STEP_CAP {
        return Err(Error::CapExceeded { got: m as u64, cap: STEP_CAP as u64 });
    }
    let rows = (rank / 2) as usize;
    let mut state: HashMap<Vec<i32>, u64> = HashMap::new();
    state.insert(Vec::new(), 1);
    for _ in 0..m {
        let mut next: HashMap<Vec<i32>, u64> = HashMap::with_capacity(state.len() * 2);
        for (lambda, &mult) in &state {
            // add a box at row i (new row allowed while under the row cap)
            for i in 0..=lambda.len() {
                if i == lambda.len() {
                    if i < rows {
                        let mut v = lambda.clone();
                        v.push(1);
                        checked_acc(&mut next, v, mult)?;
                    }
                } else if i == 0 || lambda[i - 1] > lambda[i] {
                    let mut v = lambda.clone();
                    v[i] += 1;
                    checked_acc(&mut next, v, mult)?;
                }
            }
            // remove a box at row i
            for i in 0..lambda.len() {
                if i + 1 == lambda.len() || lambda[i] > lambda[i + 1] {
                    let mut v = lambda.clone();
                    v[i] -= 1;
                    if v[i] == 0 {
                        v.pop();
                    }
                    checked_acc(&mut next, v, mult)?;
                }
            }
        }
        state = next;
    }
    Ok(state.get(&Vec::new()).copied().unwrap_or(0))
}

/// Product multiplicity over a tuple of exponent pairs: Π A_{m_j,n_j} for odd
/// rank, Π B_{m_j}·B_{n_j} for even rank.
pub fn product_multiplicity(rank: u32, m: &[u32], n: &[u32]) -> Result<u64> {
    assert_eq!(m.len(), n.len());
    let mut acc: u64 = 1;
    for j in 0..m.len() {
        let factor = if rank % 2 == 1 {
            sl_multiplicity(rank, m[j], n[j])?
        } else {
            sp_multiplicity(rank, m[j])?
                .checked_mul(sp_multiplicity(rank, n[j])?)
                .ok_or(Error::Overflow)?
        };
        acc = acc.checked_mul(factor).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// All surjections σ: {1..t} → {1..s} with σ(j) = 1 or σ(j) = σ(k)+1 for some
/// k < j (restricted-growth strings); these encode set partitions of {1..t}
/// into s nonempty blocks, so the count is the Stirling number S(t,s).
pub fn enumerate_set_partitions(t: u32, s: u32) -> Result<Vec<Vec<u8>>> {
    if t > 10 {
        return Err(Error::CapExceeded { got: t as u64, cap: 10 });
    }
    assert!(s >= 1 && s <= t);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t as usize);
    fn rec(t: u32, s: u32, max_used: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == t as usize {
            if max_used == s as u8 {
                out.push(cur.clone());
            }
            return;
        }
        let remaining = t as usize - cur.len();
        // prune: must still be able to reach s distinct values
        if (max_used as usize) + remaining < s as usize {
            return;
        }
        let top = (max_used + 1).min(s as u8);
        for v in 1..=top {
            cur.push(v);
            rec(t, s, max_used.max(v), cur, out);
            cur.pop();
        }
    }
    rec(t, s, 0, &mut cur, &mut out);
    Ok(out)
}

/// Stirling numbers of the second kind by the standard recurrence.
pub fn stirling2(t: u32, s: u32) -> u64 {
    if s == 0 {
        return u64::from(t == 0);
    }
    if s > t {
        return 0;
    }
    let mut row = vec![0u64; (t + 1) as usize];
    row[0] = 1; // S(0,0)
    for i in 1..=t {
        let hi = i.min(s);
        for j in (1..=hi).rev() {
            row[j as usize] = j as u64 * row[j as usize] + row[(j - 1) as usize];
        }
        row[0] = 0;
    }
    row[s as usize]
}

/// Number of pairs (σ, e) with σ a partition of {1..ν} into ν/2 blocks of size
/// exactly 2 and e ∈ {±1}^ν carrying opposite signs on each block; equals
/// ν!/(ν/2)!. Returns 0 for odd ν (no perfect pairing exists).
pub fn count_resonant_pairs(nu: u32) -> Result<u64> {
    if nu > 10 {
        return Err(Error::CapExceeded { got: nu as u64, cap: 10 });
    }
    if nu % 2 != 0 {
        return Ok(0);
    }
    let s = nu / 2;
    let mut count: u64 = 0;
    for sigma in enumerate_set_partitions(nu, s)? {
        let mut fiber = vec![0u32; s as usize];
        for &v in &sigma {
            fiber[(v - 1) as usize] += 1;
        }
        if fiber.iter().all(|&f| f == 2) {
            // opposite signs on each fiber: one free sign per block
            count = count.checked_add(1u64 << s).ok_or(Error::Overflow)?;
        }
    }
    let expect = (1..=nu as u64).product::<u64>() / (1..=s as u64).product::<u64>();
    assert_eq!(count, expect, "resonant-pair count must equal ν!/(ν/2)!");
    Ok(count)
}

/// Number of partitions of {1..ν} into blocks of size 2 (perfect matchings),
/// counted through the same enumeration; equals ν!/(2^{ν/2}(ν/2)!).
pub fn count_perfect_matchings(nu: u32) -> Result<u64> {
    if nu > 10 {
        return Err(Error::CapExceeded { got: nu as u64, cap: 10 });
    }
    if nu % 2 != 0 {
        return Ok(0);
    }
    let s = nu / 2;
    let mut count = 0u64;
    for sigma in enumerate_set_partitions(nu, s)? {
        let mut fiber = vec![0u32; s as usize];
        for &v in &sigma {
            fiber[(v - 1) as usize] += 1;
        }
        if fiber.iter().all(|&f| f == 2) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent SL_2 oracle: decompose V_1^{⊗m} through the character ring.
    /// Laurent polynomial of (x + 1/x)^m; trivial multiplicity = a_0 - a_2.
    fn sl2_trivial_via_characters(m: u32) -> u64 {
        // coeffs[k] = coefficient of x^{k - m}
        let mut coeffs = vec![0i64; 2 * m as usize + 1];
        coeffs[0] = 1;
        for step in 0..m as usize {
            let mut next = vec![0i64; 2 * m as usize + 1];
            for (i, &c) in coeffs.iter().enumerate().take(step + 1) {
                if c != 0 {
                    next[i] += c;
                    next[i + 2] += c;
                }
            }
            coeffs = next;
        }
        let mid = m as usize;
        let a0 = coeffs[mid];
        let a2 = if mid + 2 < coeffs.len() { coeffs[mid + 2] } else { 0 };
        (a0 - a2) as u64
    }

    /// Ballot-word oracle for invariants of Std^{⊗n} in SL_N: lattice words of
    /// length n over N letters with all prefix counts nonincreasing and total
    /// counts equal.
    fn ballot_words(rank: u32, n: u32) -> u64 {
        fn rec(counts: &mut Vec<u32>, left: u32) -> u64 {
            if left == 0 {
                let c0 = counts[0];
                return u64::from(counts.iter().all(|&c| c == c0));
            }
            let mut total = 0;
            for i in 0..counts.len() {
                if i == 0 || counts[i - 1] > counts[i] {
                    counts[i] += 1;
                    total += rec(counts, left - 1);
                    counts[i] -= 1;
                }
            }
            total
        }
        rec(&mut vec![0; rank as usize], n)
    }

    #[test]
    fn sl_base_cases() {
        assert_eq!(sl_multiplicity(3, 0, 0).unwrap(), 1);
        assert_eq!(sl_multiplicity(3, 1, 1).unwrap(), 1);
        assert_eq!(sl_multiplicity(3, 0, 2).unwrap(), 0);
        assert_eq!(sl_multiplicity(3, 0, 3).unwrap(), 1);
        assert_eq!(sl_multiplicity(3, 0, 3).unwrap(), ballot_words(3, 3));
    }

    #[test]
    fn sl_matches_ballot_oracle() {
        for rank in 2..=4u32 {
            for n in 0..=8u32 {
                assert_eq!(
                    sl_multiplicity(rank, 0, n).unwrap(),
                    ballot_words(rank, n),
                    "rank={rank}, n={n}"
                );
            }
        }
    }

    #[test]
    fn sl_vanishing_law() {
        for rank in 2..=5u32 {
            for m in 0..=8u32 {
                for n in 0..=(8 - m) {
                    if (m, n) == (0, 0) {
                        continue;
                    }
                    let mult = sl_multiplicity(rank, m, n).unwrap();
                    let divides = (m as i64 - n as i64).rem_euclid(rank as i64) == 0;
                    assert_eq!(mult >= 1, divides, "rank={rank}, m={m}, n={n}, mult={mult}");
                }
            }
        }
    }

    #[test]
    fn sl_symmetry() {
        for rank in 2..=4u32 {
            for m in 0..=4u32 {
                for n in 0..=4u32 {
                    assert_eq!(
                        sl_multiplicity(rank, m, n).unwrap(),
                        sl_multiplicity(rank, n, m).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sp_base_cases() {
        assert_eq!(sp_multiplicity(4, 0).unwrap(), 1);
        assert_eq!(sp_multiplicity(4, 2).unwrap(), 1);
        assert_eq!(sp_multiplicity(4, 3).unwrap(), 0);
        assert_eq!(sp_multiplicity(2, 4).unwrap(), 2);
        assert_eq!(sp_multiplicity(4, 4).unwrap(), 3);
        assert_eq!(sp_multiplicity(3, 2).unwrap_err(), Error::OddRank(3));
    }

    #[test]
    fn sp2_catalan_against_sl2_oracle() {
        let catalan = [1u64, 1, 2, 5, 14, 42];
        for k in 0..=5u32 {
            let got = sp_multiplicity(2, 2 * k).unwrap();
            assert_eq!(got, catalan[k as usize], "k={k}");
            assert_eq!(got, sl2_trivial_via_characters(2 * k), "k={k}");
        }
    }

    #[test]
    fn sp_even_vanishing() {
        for rank in [2u32, 4, 6] {
            for m in 0..=8u32 {
                let mult = sp_multiplicity(rank, m).unwrap();
                assert_eq!(mult >= 1, m % 2 == 0, "rank={rank}, m={m}");
            }
        }
    }

    #[test]
    fn product_rules() {
        assert_eq!(product_multiplicity(3, &[1, 0], &[1, 3]).unwrap(), 1);
        assert_eq!(product_multiplicity(4, &[2], &[2]).unwrap(), 1);
        assert_eq!(product_multiplicity(3, &[0], &[1]).unwrap(), 0);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(sl_multiplicity(3, 7, 6), Err(Error::CapExceeded { .. })));
        assert!(matches!(sp_multiplicity(4, 13), Err(Error::CapExceeded { .. })));
        assert!(matches!(enumerate_set_partitions(11, 2), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn set_partition_counts_match_stirling() {
        // brute-force count of all surjective maps, for the small (t,s) pinned cases
        assert_eq!(enumerate_set_partitions(3, 2).unwrap().len(), 3);
        assert_eq!(enumerate_set_partitions(4, 4).unwrap().len(), 1);
        assert_eq!(enumerate_set_partitions(2, 1).unwrap().len(), 1);
        for t in 1..=8u32 {
            for s in 1..=t {
                assert_eq!(
                    enumerate_set_partitions(t, s).unwrap().len() as u64,
                    stirling2(t, s),
                    "t={t}, s={s}"
                );
            }
        }
    }

    #[test]
    fn partition_identity_rearranges_sums() {
        // deterministic pseudo-random integer function on V^t, |V| = 3
        let v = 3usize;
        for t in 1..=4u32 {
            let f = |idx: &[usize]| -> i64 {
                let mut h: i64 = 7;
                for &i in idx {
                    h = h.wrapping_mul(31).wrapping_add(i as i64 * 17 + 3);
                }
                h % 1000
            };
            // plain sum over all tuples
            let mut plain = 0i64;
            let mut tuple = vec![0usize; t as usize];
            loop {
                plain += f(&tuple);
                let mut i = 0;
                loop {
                    if i == tuple.len() {
                        break;
                    }
                    tuple[i] += 1;
                    if tuple[i] < v {
                        break;
                    }
                    tuple[i] = 0;
                    i += 1;
                }
                if tuple.iter().all(|&x| x == 0) {
                    break;
                }
            }
            // partition-rearranged double sum
            let mut arranged = 0i64;
            for s in 1..=t {
                for sigma in enumerate_set_partitions(t, s).unwrap() {
                    // distinct tuples (j_1..j_s) in V^s
                    let mut js = vec![0usize; s as usize];
                    loop {
                        let distinct = (0..js.len()).all(|i| (0..i).all(|k| js[k] != js[i]));
                        if distinct {
                            let idx: Vec<usize> =
                                sigma.iter().map(|&b| js[(b - 1) as usize]).collect();
                            arranged += f(&idx);
                        }
                        let mut i = 0;
                        loop {
                            if i == js.len() {
                                break;
                            }
                            js[i] += 1;
                            if js[i] < v {
                                break;
                            }
                            js[i] = 0;
                            i += 1;
                        }
                        if js.iter().all(|&x| x == 0) {
                            break;
                        }
                    }
                }
            }
            assert_eq!(plain, arranged, "t={t}");
        }
    }

    #[test]
    fn resonant_pair_counts() {
        assert_eq!(count_resonant_pairs(2).unwrap(), 2);
        assert_eq!(count_resonant_pairs(4).unwrap(), 12);
        assert_eq!(count_resonant_pairs(6).unwrap(), 120);
        assert_eq!(count_resonant_pairs(3).unwrap(), 0);
    }

    #[test]
    fn matching_counts() {
        for nu in [2u32, 4, 6, 8] {
            let want = (1..=nu as u64).product::<u64>()
                / ((1u64 << (nu / 2)) * (1..=(nu / 2) as u64).product::<u64>());
            assert_eq!(count_perfect_matchings(nu).unwrap(), want, "nu={nu}");
        }
    }
}
