//! Independent ground truth: brute-force zero-forcing, optimal TDMA, explicit
//! per-lemma schemes and the converse certificate for five-user subnetworks.
//!
//! Zero-forcing feasibility decomposes per message. Given the delivered set
//! `D`, message `j` only needs a beam `v_j` supported on `T_j` that is
//! orthogonal to the channel rows of the receivers in `D \ {j}` and not
//! orthogonal to its own row. The constraints for different messages share
//! no variables, so `D` is feasible iff each message is feasible on its own,
//! i.e. iff `h_j` restricted to `T_j` is outside the span of those rows.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::assignment::{expand_ternary, MessageAssignment, TernaryString};
use crate::error::{DofError, Result};
use crate::linalg::outside_span;
use crate::network::{derive_seed, sample_coefficients, ChannelCoefficients, NetworkRealization};
use crate::partition::{partition_atomic, AtomicSubnetwork};
use crate::zf::{local_gain, schedule_atomic, Schedule};

/// Largest subnetwork (or network) the subset enumeration accepts.
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Maximum number of simultaneously zero-forced messages over receivers
/// `1..=n`; `gain(rx, tx)` is zero for absent links.
fn max_zero_forcing(n: usize, sets: &[Vec<usize>], gain: impl Fn(usize, usize) -> i64) -> usize {
    debug_assert_eq!(sets.len(), n);
    // For each message: neighbouring receivers and, per subset of them,
    // whether the message survives.
    let mut neighbours: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut feasible: Vec<Vec<bool>> = Vec::with_capacity(n);
    for j in 1..=n {
        let cols = &sets[j - 1];
        let row = |rx: usize| -> Vec<i128> { cols.iter().map(|&t| gain(rx, t) as i128).collect() };
        let own = row(j);
        let nb: Vec<usize> = (1..=n)
            .filter(|&rx| rx != j && cols.iter().any(|&t| gain(rx, t) != 0))
            .collect();
        let table = (0..1usize << nb.len())
            .map(|mask| {
                let rows: Vec<Vec<i128>> = nb
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &rx)| row(rx))
                    .collect();
                outside_span(&rows, &own)
            })
            .collect();
        neighbours.push(nb);
        feasible.push(table);
    }

    let mut best = 0;
    for d in 0u32..1 << n {
        let size = d.count_ones() as usize;
        if size <= best {
            continue;
        }
        let ok = (1..=n).filter(|&j| d >> (j - 1) & 1 == 1).all(|j| {
            let mask = neighbours[j - 1]
                .iter()
                .enumerate()
                .filter(|(_, &rx)| d >> (rx - 1) & 1 == 1)
                .fold(0usize, |m, (b, _)| m | 1 << b);
            feasible[j - 1][mask]
        });
        if ok {
            best = size;
        }
    }
    best
}

/// Optimal zero-forcing DoF of an atomic subnetwork by subset enumeration.
pub fn brute_force_zf(sub: &AtomicSubnetwork, c: &ChannelCoefficients) -> Result<usize> {
    let n = sub.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(DofError::SizeGuard {
            found: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(max_zero_forcing(n, sub.local_sets(), |rx, t| {
        local_gain(sub, c, rx, t)
    }))
}

/// Optimal zero-forcing DoF of a whole network, straight from the
/// (unreduced) assignment.
pub fn brute_force_zf_network(a: &MessageAssignment, c: &ChannelCoefficients) -> Result<usize> {
    let k = a.k();
    if k > BRUTE_FORCE_LIMIT {
        return Err(DofError::SizeGuard {
            found: k,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(max_zero_forcing(k, a.sets(), |rx, t| c.get(rx, t)))
}

/// Transmit-set choices for local user `i` of an `n`-user subnetwork that
/// survive reduction in some realization.
fn local_choices(i: usize, n: usize) -> Vec<Vec<usize>> {
    let i = i as isize;
    let n = n as isize;
    [
        vec![i - 1],
        vec![i],
        vec![i - 2, i - 1],
        vec![i - 1, i],
        vec![i, i + 1],
    ]
    .into_iter()
    .filter(|s| s.iter().all(|&t| (0..=n).contains(&t)))
    .map(|s| s.into_iter().map(|t| t as usize).collect())
    .collect()
}

/// Whether the local description is exactly what partitioning its own
/// embedding produces, i.e. it is reduced and atomic.
pub fn is_canonical(sub: &AtomicSubnetwork) -> bool {
    let (r, a) = sub.embed();
    let p = partition_atomic(&r, &a);
    p.subnets.len() == 1 && p.subnets[0] == *sub
}

/// Whether the subnetwork can come from an assignment giving every message
/// exactly two transmitters: each singleton `{t}` must be what is left of a
/// pair `{t, u}` after reduction, i.e. `u` is unmarked and `t, u` share no
/// common receiver inside the subnetwork.
pub fn from_two_transmitter_assignment(sub: &AtomicSubnetwork) -> bool {
    let n = sub.n() as isize;
    let link =
        |rx: isize, tx: isize| rx >= 1 && rx <= n && tx >= 0 && sub.link(rx as usize, tx as usize);
    (1..=n).all(|i| match sub.set(i as usize) {
        [t] => {
            let t = *t as isize;
            [t - 1, t + 1].into_iter().any(|u| {
                let in_shape = (i - 2..=i + 1).contains(&u);
                let marked = (u == i && link(i, i)) || (u == i - 1 && link(i, i - 1));
                let c = t.max(u);
                in_shape && !marked && !(link(c, t) && link(c, u))
            })
        }
        _ => true,
    })
}

/// Every reduced atomic subnetwork of size `n` with `M <= 2`, over all four
/// combinations of `H_{1,0}` and `H_{N,N}`.
pub fn enumerate_local_cases(n: usize) -> Vec<AtomicSubnetwork> {
    let choices: Vec<Vec<Vec<usize>>> = (1..=n).map(|i| local_choices(i, n)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let sets: Vec<Vec<usize>> = (0..n).map(|u| choices[u][idx[u]].clone()).collect();
        for h10 in [false, true] {
            for h_nn in [false, true] {
                let sub = AtomicSubnetwork::from_local(sets.clone(), h10, h_nn);
                if is_canonical(&sub) {
                    out.push(sub);
                }
            }
        }
        // Odometer increment.
        let mut u = 0;
        loop {
            if u == n {
                return out;
            }
            idx[u] += 1;
            if idx[u] < choices[u].len() {
                break;
            }
            idx[u] = 0;
            u += 1;
        }
    }
}

/// Random reduced atomic subnetworks of size at most `max_n`, obtained by
/// partitioning random embeddings. Each result is re-anchored so that
/// [`AtomicSubnetwork::embed`] reproduces it.
pub fn random_local_cases<R: Rng>(rng: &mut R, max_n: usize) -> Vec<AtomicSubnetwork> {
    let n = rng.gen_range(1..=max_n);
    let sets: Vec<Vec<usize>> = (1..=n)
        .map(|i| local_choices(i, n).choose(rng).unwrap().clone())
        .collect();
    let sub = AtomicSubnetwork::from_local(sets, rng.gen_bool(0.7), rng.gen_bool(0.7));
    let (r, a) = sub.embed();
    partition_atomic(&r, &a)
        .subnets
        .into_iter()
        .map(|s| AtomicSubnetwork::from_local(s.local_sets().to_vec(), s.h10(), s.h_nn()))
        .collect()
}

/// The single transmitter of each user of an `M = 1` assignment.
fn single_transmitters(a: &MessageAssignment) -> Result<Vec<usize>> {
    let m = a.cooperation_order();
    if m != 1 {
        return Err(DofError::UnsupportedCooperation { found: m, max: 1 });
    }
    (1..=a.k())
        .map(|i| match a.set(i) {
            [t] if *t == i || *t + 1 == i => Ok(*t),
            other => Err(DofError::InvalidAssignment(format!(
                "T_{i} = {other:?} must be {{{}}} or {{{i}}}",
                i - 1
            ))),
        })
        .collect()
}

/// Optimal TDMA sum DoF of one realization under cell association.
///
/// User `j` is deliverable when `H_{j,t_j}` survives. Since `t_j ∈ {j-1, j}`,
/// the only receivers a transmission can disturb besides its own are those of
/// the neighbouring users, so conflicts form a path and a two-state dynamic
/// program over users (previous user active or not) is exact.
pub fn tdma_optimal(r: &NetworkRealization, a: &MessageAssignment) -> Result<usize> {
    let tx = single_transmitters(a)?;
    let k = a.k();
    let ok = |j: usize| r.connected(j, tx[j - 1]);
    let conflict = |j: usize| r.connected(j + 1, tx[j - 1]) || r.connected(j, tx[j]);
    // (best with user j idle, best with user j active)
    let mut idle = 0usize;
    let mut active: Option<usize> = if ok(1) { Some(1) } else { None };
    for j in 2..=k {
        let prev_best = idle.max(active.unwrap_or(0));
        let next_active = if ok(j) {
            let with_prev = match active {
                Some(v) if !conflict(j - 1) => v + 1,
                _ => 0,
            };
            Some(with_prev.max(idle + 1))
        } else {
            None
        };
        idle = prev_best;
        active = next_active;
    }
    Ok(idle.max(active.unwrap_or(0)))
}

/// Same quantity as [`tdma_optimal`] by checking every subset of users.
pub fn tdma_brute_force(r: &NetworkRealization, a: &MessageAssignment) -> Result<usize> {
    let tx = single_transmitters(a)?;
    let k = a.k();
    if k > 20 {
        return Err(DofError::SizeGuard {
            found: k,
            limit: 20,
        });
    }
    let mut best = 0;
    for d in 0u32..1 << k {
        let members: Vec<usize> = (1..=k).filter(|&j| d >> (j - 1) & 1 == 1).collect();
        let fine = members.iter().all(|&j| {
            r.connected(j, tx[j - 1])
                && members
                    .iter()
                    .all(|&i| i == j || !r.connected(j, tx[i - 1]))
        });
        if fine {
            best = best.max(members.len());
        }
    }
    Ok(best)
}

fn lemma_string(which: u8) -> Result<TernaryString> {
    match which {
        1 => TernaryString::new(vec![1]),
        2 => TernaryString::new(vec![2, 1, 0]),
        3 => TernaryString::new(vec![1, 2, 1, 0]),
        _ => Err(DofError::config("which", "expected 1, 2 or 3")),
    }
}

/// Users `lo..=hi` with `T_i = {i}`: odd users first, except that a conflict
/// chain of odd length starting at an even user delivers its even users.
fn identity_segment(r: &NetworkRealization, lo: usize, hi: usize) -> usize {
    let mut total = 0;
    let mut j = lo;
    while j <= hi {
        if !r.connected(j, j) {
            j += 1;
            continue;
        }
        let start = j;
        while j < hi && r.connected(j + 1, j + 1) && r.connected(j + 1, j) {
            j += 1;
        }
        let len = j - start + 1;
        let evens_first = start % 2 == 0 && len % 2 == 1;
        total += (start..=j).filter(|&u| (u % 2 == 0) == evens_first).count();
        j += 1;
    }
    total
}

/// Delivered count of the explicit priority scheme for the cell-association
/// strategy `(1)` (`which = 1`), `(2,1,0)` (`which = 2`) or `(1,2,1,0)`
/// (`which = 3`). Users past the last full period keep `T_i = {i}` and follow
/// the first scheme.
pub fn lemma2_4_scheme_dof(
    r: &NetworkRealization,
    a: &MessageAssignment,
    which: u8,
) -> Result<usize> {
    let s = lemma_string(which)?;
    let k = a.k();
    let expected = expand_ternary(&s, k)?;
    if expected != *a {
        return Err(DofError::SchemeMismatch(s.to_string()));
    }
    let h = |rx: usize, tx: usize| r.connected(rx, tx);
    let n = s.len();
    let tiled = if which == 1 { 0 } else { n * (k / n) };
    let mut total = 0;
    for base in (0..tiled).step_by(n) {
        let u = |i: usize| base + i;
        if which == 2 {
            // T = {1}, {1}, {2} inside the block.
            let w1 = h(u(1), u(1));
            let w3 = h(u(3), u(2));
            let w2 = h(u(2), u(1)) && !w1 && (!h(u(2), u(2)) || !w3);
            total += [w1, w2, w3].iter().filter(|&&x| x).count();
        } else {
            // T = {1}, {2}, {2}, {3} inside the block.
            let d1 = h(u(1), u(1));
            let d2 = h(u(2), u(2));
            let d3 = h(u(3), u(2));
            let d4 = h(u(4), u(3));
            let swap = (!d1 || !h(u(2), u(1))) && d2 && d3 && h(u(3), u(3)) && d4;
            let (w2, w3, w4) = if swap {
                (true, false, true)
            } else {
                let w2 = d2 && !d3 && (!h(u(2), u(1)) || !d1);
                let w4 = d4 && (!h(u(3), u(3)) || !d3);
                (w2, d3, w4)
            };
            total += [d1, w2, w3, w4].iter().filter(|&&x| x).count();
        }
    }
    if tiled < k {
        total += identity_segment(r, tiled + 1, k);
    }
    Ok(total)
}

/// How a transmit signal becomes known in a converse argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    /// The transmitter only carries messages decodable from `Y_A`.
    Messages,
    /// Solved from this received signal, whose other input is already known.
    Receiver(usize),
}

/// A receiver set `A` together with the order in which every transmit signal
/// of the subnetwork is recovered from `Y_A` (noise aside).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConverseCertificate {
    pub a: Vec<usize>,
    pub order: Vec<(usize, Source)>,
}

impl ConverseCertificate {
    /// The DoF upper bound `|A|`.
    pub fn bound(&self) -> usize {
        self.a.len()
    }

    /// Builds the recovery order for `a` greedily; the result verifies iff
    /// `a` is a valid converse set.
    pub fn for_set(sub: &AtomicSubnetwork, a: Vec<usize>) -> Self {
        let n = sub.n();
        let mut known = vec![false; n + 1];
        let mut order = Vec::new();
        for t in 0..=n {
            if carried_only_by(sub, t, &a) {
                known[t] = true;
                order.push((t, Source::Messages));
            }
        }
        let mut progress = true;
        while progress {
            progress = false;
            for &rx in &a {
                if let Some(t) = solvable(sub, rx, &known) {
                    known[t] = true;
                    order.push((t, Source::Receiver(rx)));
                    progress = true;
                }
            }
        }
        ConverseCertificate { a, order }
    }
}

fn carried_only_by(sub: &AtomicSubnetwork, t: usize, a: &[usize]) -> bool {
    (1..=sub.n()).all(|i| !sub.set(i).contains(&t) || a.contains(&i))
}

/// The single unknown transmitter heard at `rx`, if exactly one.
fn solvable(sub: &AtomicSubnetwork, rx: usize, known: &[bool]) -> Option<usize> {
    let unknown: Vec<usize> = [rx - 1, rx]
        .into_iter()
        .filter(|&t| sub.link(rx, t) && !known[t])
        .collect();
    match unknown[..] {
        [t] => Some(t),
        _ => None,
    }
}

/// Receiver set for a five-user subnetwork, chosen by the case analysis on
/// which boundary transmitters belong to the subnetwork.
pub fn converse_bound_n5(sub: &AtomicSubnetwork) -> Result<ConverseCertificate> {
    if sub.n() != 5 {
        return Err(DofError::UnsupportedSize(sub.n()));
    }
    let m = sub.local_sets().iter().map(Vec::len).max().unwrap_or(0);
    if m > 2 {
        return Err(DofError::UnsupportedCooperation { found: m, max: 2 });
    }
    let has = |i: usize, t: usize| sub.set(i).contains(&t);
    let is = |i: usize, s: &[usize]| sub.set(i) == s;
    let a: Vec<usize> = match (sub.tx0_in(), sub.txn_in()) {
        (true, false) => {
            let pick = |x: [usize; 3], y: [usize; 3], z: [usize; 3]| {
                if !has(1, 0) {
                    x.to_vec()
                } else if !has(3, 3) {
                    y.to_vec()
                } else if is(2, &[1, 2]) {
                    z.to_vec()
                } else {
                    vec![1, 2, 4, 5]
                }
            };
            if !has(5, 3) {
                pick([2, 3, 4], [1, 2, 4], [1, 3, 4])
            } else if !has(4, 3) {
                pick([2, 3, 5], [1, 2, 5], [1, 3, 5])
            } else {
                vec![1, 2, 4, 5]
            }
        }
        (false, true) => {
            let pick = |x: [usize; 3], y: [usize; 3], z: [usize; 3]| {
                if !has(5, 5) {
                    x.to_vec()
                } else if !has(3, 2) {
                    y.to_vec()
                } else if is(4, &[3, 4]) {
                    z.to_vec()
                } else {
                    vec![1, 2, 4, 5]
                }
            };
            if !has(1, 2) {
                pick([2, 3, 4], [2, 4, 5], [2, 3, 5])
            } else if !has(2, 2) {
                pick([1, 3, 4], [1, 4, 5], [1, 3, 5])
            } else {
                vec![1, 2, 4, 5]
            }
        }
        (true, true) => vec![1, 2, 4, 5],
        (false, false) => {
            if !has(1, 2) {
                vec![2, 3, 4]
            } else if !has(2, 2) {
                vec![1, 3, 4]
            } else if !has(4, 3) {
                vec![2, 3, 5]
            } else if !has(5, 3) {
                vec![2, 3, 4]
            } else {
                vec![1, 2, 4, 5]
            }
        }
    };
    Ok(ConverseCertificate::for_set(sub, a))
}

/// Replays a certificate: every step must be justified at the time it is
/// taken, and all transmit signals of the subnetwork must end up known.
pub fn verify_certificate(cert: &ConverseCertificate, sub: &AtomicSubnetwork) -> bool {
    let n = sub.n();
    if cert.a.iter().any(|&r| r == 0 || r > n) {
        return false;
    }
    let mut known = vec![false; n + 1];
    for &(t, source) in &cert.order {
        if t > n || known[t] {
            return false;
        }
        let justified = match source {
            Source::Messages => carried_only_by(sub, t, &cert.a),
            Source::Receiver(rx) => {
                cert.a.contains(&rx)
                    && (1..=n).contains(&rx)
                    && solvable(sub, rx, &known) == Some(t)
            }
        };
        if !justified {
            return false;
        }
        known[t] = true;
    }
    known.iter().all(|&k| k)
}

/// The same subnetwork read backwards: user `i` becomes `N + 1 - i` and
/// transmitter `t` becomes `N - t`.
pub fn mirror(sub: &AtomicSubnetwork) -> AtomicSubnetwork {
    let n = sub.n();
    let sets = (1..=n)
        .rev()
        .map(|i| sub.set(i).iter().map(|&t| n - t).collect())
        .collect();
    AtomicSubnetwork::from_local(sets, sub.h_nn(), sub.h10())
}

/// Outcome of an oracle validation suite.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub cases: usize,
    /// Five-user cases whose converse bound was checked for equality.
    pub converse_checked: usize,
    /// Five-user cases outside the two-transmitter class where the certificate
    /// is valid but loose.
    pub converse_loose: usize,
    pub mismatches: usize,
    /// First failing case, verbatim.
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    fn fail(&mut self, detail: String) {
        self.mismatches += 1;
        if self.first_counterexample.is_none() {
            self.first_counterexample = Some(detail);
        }
    }
}

fn describe(sub: &AtomicSubnetwork, sched: &Schedule, what: &str) -> String {
    format!(
        "{what}\nsubnetwork: {sub}\nlocal sets: {:?}\nH_10 = {}, H_NN = {}\nschedule:\n{}",
        sub.local_sets(),
        sub.h10(),
        sub.h_nn(),
        sched.dump()
    )
}

/// Exhaustive check over every reduced atomic subnetwork with `N <= max_n`:
/// greedy schedule, brute force and (at `N = 5`) the converse bound.
pub fn sandwich_suite(max_n: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::default();
    for n in 1..=max_n {
        for (idx, sub) in enumerate_local_cases(n).into_iter().enumerate() {
            report.cases += 1;
            let sched = schedule_atomic(&sub);
            let c = sample_coefficients(&sub.embed().0, derive_seed(seed, idx as u64));
            let g = sched.dof();
            let bf = brute_force_zf(&sub, &c).expect("small case");
            if let Err(e) = sched.check(&sub) {
                report.fail(describe(&sub, &sched, &format!("invalid schedule: {e}")));
            } else if g != bf {
                report.fail(describe(
                    &sub,
                    &sched,
                    &format!("greedy {g} != brute force {bf}"),
                ));
            }
            if n == 5 {
                let cert = converse_bound_n5(&sub).expect("five users, M <= 2");
                if !verify_certificate(&cert, &sub) {
                    report.fail(describe(
                        &sub,
                        &sched,
                        &format!("certificate {cert:?} does not verify"),
                    ));
                } else if from_two_transmitter_assignment(&sub) {
                    report.converse_checked += 1;
                    if cert.bound() != g {
                        report.fail(describe(
                            &sub,
                            &sched,
                            &format!(
                                "converse {:?} gives {} but greedy gives {g}",
                                cert.a,
                                cert.bound()
                            ),
                        ));
                    }
                } else if cert.bound() != g {
                    report.converse_loose += 1;
                }
            }
        }
    }
    report
}

/// Greedy against brute force on the atomic pieces of `draws` random
/// subnetworks with `N <= max_n`.
pub fn random_suite(draws: usize, max_n: usize, seed: u64) -> SuiteReport {
    let chunks: Vec<SuiteReport> = (0..draws as u64)
        .into_par_iter()
        .map(|i| {
            let mut report = SuiteReport::default();
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i));
            for sub in random_local_cases(&mut rng, max_n) {
                report.cases += 1;
                let sched = schedule_atomic(&sub);
                let c = sample_coefficients(&sub.embed().0, rng.gen());
                let bf = brute_force_zf(&sub, &c).expect("within limit");
                if sched.dof() != bf {
                    report.fail(describe(
                        &sub,
                        &sched,
                        &format!("greedy {} != brute force {bf}", sched.dof()),
                    ));
                }
            }
            report
        })
        .collect();
    let mut total = SuiteReport::default();
    for r in chunks {
        total.cases += r.cases;
        total.mismatches += r.mismatches;
        if total.first_counterexample.is_none() {
            total.first_counterexample = r.first_counterexample;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::Strategy;
    use crate::network::NetworkTopology;

    fn coeffs(sub: &AtomicSubnetwork, seed: u64) -> ChannelCoefficients {
        sample_coefficients(&sub.embed().0, seed)
    }

    fn local(sets: &[&[usize]], h10: bool, h_nn: bool) -> AtomicSubnetwork {
        AtomicSubnetwork::from_local(sets.iter().map(|s| s.to_vec()).collect(), h10, h_nn)
    }

    #[test]
    fn brute_force_examples() {
        let sub = local(&[&[1]], false, true);
        assert_eq!(brute_force_zf(&sub, &coeffs(&sub, 1)).unwrap(), 1);
        let sub = local(&[&[1, 2], &[1, 2], &[3, 4], &[3, 4], &[3, 4]], false, false);
        assert_eq!(brute_force_zf(&sub, &coeffs(&sub, 1)).unwrap(), 4);
        let sub = local(&[&[1], &[1, 2], &[2, 3], &[3, 4], &[4]], false, false);
        assert_eq!(brute_force_zf(&sub, &coeffs(&sub, 1)).unwrap(), 3);
    }

    #[test]
    fn exhaustive_small_agreement() {
        for n in 1..=5 {
            for sub in enumerate_local_cases(n) {
                let c = coeffs(&sub, 3);
                let bf = brute_force_zf(&sub, &c).unwrap();
                let g = schedule_atomic(&sub).dof();
                assert_eq!(g, bf, "{:?}", sub);
            }
        }
    }

    #[test]
    fn tdma_examples() {
        let topo = NetworkTopology::new(2);
        let a = MessageAssignment::new(2, vec![vec![1], vec![2]]).unwrap();
        assert_eq!(
            tdma_optimal(&NetworkRealization::all_present(topo), &a).unwrap(),
            1
        );
        assert_eq!(
            tdma_optimal(&NetworkRealization::all_erased(topo), &a).unwrap(),
            0
        );

        let topo = NetworkTopology::new(3);
        let a = Strategy::Ternary { s: vec![2, 1, 0] }.build(3).unwrap();
        assert_eq!(a.sets(), &[vec![1], vec![1], vec![2]]);
        let r = NetworkRealization::all_present(topo);
        assert_eq!(tdma_optimal(&r, &a).unwrap(), 2);
        assert_eq!(tdma_brute_force(&r, &a).unwrap(), 2);
    }

    #[test]
    fn lemma_scheme_examples() {
        let topo = NetworkTopology::new(6);
        let a = Strategy::Ternary { s: vec![1] }.build(6).unwrap();
        let r = NetworkRealization::all_present(topo);
        assert_eq!(lemma2_4_scheme_dof(&r, &a, 1).unwrap(), 3);

        // Users 2..4 form one conflict chain: deliver 2 and 4 instead of 3.
        let topo = NetworkTopology::new(5);
        let a = Strategy::Ternary { s: vec![1] }.build(5).unwrap();
        let r = NetworkRealization::with_erased(topo, &[(1, 1), (2, 1), (5, 4)]);
        assert_eq!(lemma2_4_scheme_dof(&r, &a, 1).unwrap(), 3);
        assert_eq!(tdma_optimal(&r, &a).unwrap(), 3);

        assert!(matches!(
            lemma2_4_scheme_dof(&r, &a, 2),
            Err(DofError::SchemeMismatch(_))
        ));
    }

    #[test]
    fn converse_examples() {
        // Transmitter 0 in, transmitter 5 out, 3 not in T_5, 0 not in T_1.
        let sub = local(&[&[1, 2], &[0, 1], &[2, 3], &[3, 4], &[4]], true, false);
        assert!(sub.tx0_in() && !sub.txn_in());
        let cert = converse_bound_n5(&sub).unwrap();
        assert_eq!(cert.a, vec![2, 3, 4]);
        assert!(verify_certificate(&cert, &sub));

        let sub = local(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5]], true, true);
        let cert = converse_bound_n5(&sub).unwrap();
        assert_eq!(cert.a, vec![1, 2, 4, 5]);
        assert!(verify_certificate(&cert, &sub));

        let sub = local(&[&[1], &[1, 2], &[2, 3], &[3, 4], &[4]], false, false);
        assert!(!sub.tx0_in() && !sub.txn_in());
        let cert = converse_bound_n5(&sub).unwrap();
        assert_eq!(cert.a, vec![2, 3, 4]);
        assert!(verify_certificate(&cert, &sub));

        assert!(matches!(
            converse_bound_n5(&local(&[&[1]], false, true)),
            Err(DofError::UnsupportedSize(1))
        ));
    }

    #[test]
    fn certificate_controls() {
        let sub = local(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5]], true, true);
        let wrong = ConverseCertificate::for_set(&sub, vec![1, 2]);
        assert!(!verify_certificate(&wrong, &sub));
        let one = local(&[&[1]], false, true);
        assert!(verify_certificate(
            &ConverseCertificate::for_set(&one, vec![1]),
            &one
        ));
        // A tampered order fails even for a valid set.
        let mut cert = converse_bound_n5(&sub).unwrap();
        cert.order.reverse();
        assert!(!verify_certificate(&cert, &sub));
    }

    #[test]
    fn suites_pass() {
        let r = sandwich_suite(5, 1);
        assert_eq!(r.cases, 3705);
        assert_eq!((r.converse_checked, r.converse_loose), (556, 347));
        assert!(r.passed(), "{:?}", r.first_counterexample);
        let r = random_suite(500, 8, 2);
        assert!(r.cases >= 500 && r.passed());
    }
}
