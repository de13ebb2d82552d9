//! Splitting a realization into non-interfering atomic subnetworks.
//!
//! Inside an atomic subnetwork, users are re-indexed `1..=N` and transmitters
//! `0..=N`: local transmitter 0 is the global transmitter preceding the first
//! user. All links between local transmitters `1..N-1` and their two receivers
//! are present; only `H_{1,0}` and `H_{N,N}` may be missing.

use std::fmt;
use std::ops::RangeInclusive;

use crate::assignment::{is_enabled, topology_reduce, MessageAssignment};
use crate::network::{NetworkRealization, NetworkTopology};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomicSubnetwork {
    first_user: usize,
    local_sets: Vec<Vec<usize>>,
    h10: bool,
    h_nn: bool,
}

impl AtomicSubnetwork {
    /// A standalone subnetwork given in local coordinates.
    ///
    /// It is anchored at global user 2 so that local transmitter 0 has a
    /// global counterpart; see [`embed`](Self::embed).
    ///
    /// # Panics
    /// If a set mentions a transmitter outside `0..=n` or `n == 0`.
    pub fn from_local(local_sets: Vec<Vec<usize>>, h10: bool, h_nn: bool) -> Self {
        let n = local_sets.len();
        assert!(n >= 1);
        let mut local_sets = local_sets;
        for set in &mut local_sets {
            assert!(
                set.iter().all(|&t| t <= n),
                "local transmitter out of range"
            );
            set.sort_unstable();
            set.dedup();
        }
        AtomicSubnetwork {
            first_user: 2,
            local_sets,
            h10,
            h_nn,
        }
    }

    pub fn n(&self) -> usize {
        self.local_sets.len()
    }

    pub fn first_user(&self) -> usize {
        self.first_user
    }

    pub fn user_range(&self) -> RangeInclusive<usize> {
        self.first_user..=self.first_user + self.n() - 1
    }

    /// Local transmit set of local user `i` (1-indexed).
    pub fn set(&self, i: usize) -> &[usize] {
        &self.local_sets[i - 1]
    }

    pub fn local_sets(&self) -> &[Vec<usize>] {
        &self.local_sets
    }

    /// `j ∈ T_i` in local indices; false for out-of-range `i`.
    pub fn has(&self, i: isize, j: isize) -> bool {
        if i < 1 || i as usize > self.n() || j < 0 {
            return false;
        }
        self.set(i as usize).contains(&(j as usize))
    }

    /// Whether `H_{1,0}` (local) survived.
    pub fn h10(&self) -> bool {
        self.h10
    }

    /// Whether `H_{N,N}` (local) survived.
    pub fn h_nn(&self) -> bool {
        self.h_nn
    }

    /// Local link presence for receiver `rx` in `1..=N`.
    pub fn link(&self, rx: usize, tx: usize) -> bool {
        let n = self.n();
        if rx == 0 || rx > n || !(tx == rx || tx + 1 == rx) {
            return false;
        }
        match (rx, tx) {
            (1, 0) => self.h10,
            (r, t) if r == n && t == n => self.h_nn,
            _ => true,
        }
    }

    fn carries_any(&self, tx: usize) -> bool {
        self.local_sets.iter().any(|s| s.contains(&tx))
    }

    /// Transmitter 0 is connected to receiver 1 and carries a message of the subnetwork.
    pub fn tx0_in(&self) -> bool {
        self.h10 && self.carries_any(0)
    }

    /// Transmitter N is connected to receiver N and carries a message of the subnetwork.
    pub fn txn_in(&self) -> bool {
        self.h_nn && self.carries_any(self.n())
    }

    pub fn to_global_tx(&self, local: usize) -> usize {
        self.first_user + local - 1
    }

    pub fn to_global_user(&self, local: usize) -> usize {
        self.first_user + local - 1
    }

    /// Global transmitters carrying at least one message of the subnetwork.
    pub fn tx_span(&self) -> RangeInclusive<usize> {
        let lo = self.local_sets.iter().flatten().min().copied().unwrap_or(1);
        let hi = self.local_sets.iter().flatten().max().copied().unwrap_or(1);
        self.to_global_tx(lo)..=self.to_global_tx(hi)
    }

    /// Realization and assignment of an `(N+1)`-user network whose only
    /// active part is this subnetwork (global users `2..=N+1`). User 1 is a
    /// dummy whose direct link is erased.
    pub fn embed(&self) -> (NetworkRealization, MessageAssignment) {
        let n = self.n();
        let k = n + 1;
        let topo = NetworkTopology::new(k);
        let mut erased = vec![(1, 1)];
        if !self.h10 {
            erased.push((2, 1));
        }
        if !self.h_nn {
            erased.push((k, k));
        }
        let r = NetworkRealization::with_erased(topo, &erased);
        let mut sets = vec![vec![1]];
        sets.extend(
            self.local_sets
                .iter()
                .map(|s| s.iter().map(|&t| t + 1).collect::<Vec<_>>()),
        );
        let a = MessageAssignment::new(k, sets).expect("local sets are non-empty and in range");
        (r, a)
    }
}

impl fmt::Display for AtomicSubnetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let users = self.user_range();
        let txs = self.tx_span();
        write!(
            f,
            "users={}..{} txs={}..{}",
            users.start(),
            users.end(),
            txs.start(),
            txs.end()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub subnets: Vec<AtomicSubnetwork>,
    /// Users whose message is not enabled in this realization.
    pub inactive: Vec<usize>,
}

impl Partition {
    /// One `users=i..j txs=a..b` line per subnetwork.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in &self.subnets {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

/// Partitions a realization into atomic subnetworks.
///
/// The assignment is topology-reduced first (a no-op on an already reduced
/// one). Then:
/// 1. links are scanned in flat order `(1,1), (2,1), (2,2), ...` and grouped
///    into maximal runs of present links;
/// 2. inside a group, receivers are scanned in order and a non-enabled user
///    closes the current subnetwork;
/// 3. each subnetwork is split at any transmitter reaching two of its
///    receivers while carrying none of its messages.
pub fn partition_atomic(r: &NetworkRealization, a: &MessageAssignment) -> Partition {
    let reduced = topology_reduce(a, r);
    let k = r.k();
    let topo = *r.topology();
    let active = |u: usize| !reduced.set(u).is_empty();

    // Phase 1.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for idx in 0..topo.num_links() {
        if r.present_at(idx) {
            let (rx, _) = topo.link_at(idx);
            if current.last() != Some(&rx) {
                current.push(rx);
            }
        } else if !current.is_empty() {
            groups.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        groups.push(current);
    }

    // Phase 2.
    let mut pieces: Vec<(usize, usize)> = Vec::new();
    for group in &groups {
        let mut start: Option<usize> = None;
        for &rx in group {
            if active(rx) {
                start.get_or_insert(rx);
            } else if let Some(s) = start.take() {
                pieces.push((s, rx - 1));
            }
        }
        if let Some(s) = start {
            pieces.push((s, *group.last().unwrap()));
        }
    }

    // Phase 3.
    let carries_for = |t: usize, lo: usize, hi: usize| (lo..=hi).any(|u| reduced.carries(t, u));
    let mut atomic: Vec<(usize, usize)> = Vec::new();
    let mut work = pieces;
    work.reverse();
    while let Some((lo, hi)) = work.pop() {
        match (lo..hi).find(|&t| !carries_for(t, lo, hi)) {
            Some(t) => {
                // Pushed in reverse so the left piece is processed first.
                work.push((t + 1, hi));
                work.push((lo, t));
            }
            None => atomic.push((lo, hi)),
        }
    }

    let subnets = atomic
        .into_iter()
        .map(|(lo, hi)| {
            let local_sets = (lo..=hi)
                .map(|u| {
                    reduced
                        .set(u)
                        .iter()
                        .map(|&t| {
                            assert!(
                                t + 1 >= lo && t <= hi,
                                "transmitter {t} of user {u} falls outside subnetwork {lo}..={hi}"
                            );
                            t + 1 - lo
                        })
                        .collect()
                })
                .collect();
            AtomicSubnetwork {
                first_user: lo,
                local_sets,
                h10: lo >= 2 && r.link_present(lo, lo - 1),
                h_nn: r.link_present(hi, hi),
            }
        })
        .collect();
    let inactive = (1..=k).filter(|&u| !active(u)).collect();
    Partition { subnets, inactive }
}

/// Checks a partition directly against the subnetwork definitions.
///
/// Returns a description of the first violated condition.
pub fn check_partition(
    p: &Partition,
    r: &NetworkRealization,
    a: &MessageAssignment,
) -> Result<(), String> {
    let reduced = topology_reduce(a, r);
    let k = r.k();

    // Coverage, order and disjointness.
    let mut owner: Vec<Option<usize>> = vec![None; k + 1];
    let mut prev_end = 0;
    for (s_idx, s) in p.subnets.iter().enumerate() {
        let range = s.user_range();
        if *range.start() <= prev_end || *range.end() > k {
            return Err(format!("subnetwork {s} is out of order or out of range"));
        }
        prev_end = *range.end();
        for u in range {
            owner[u] = Some(s_idx);
        }
    }
    for u in 1..=k {
        let enabled = is_enabled(a, r, u);
        let listed_inactive = p.inactive.contains(&u);
        match (owner[u].is_some(), enabled, listed_inactive) {
            (true, true, false) | (false, false, true) => {}
            _ => return Err(format!("user {u} is misclassified")),
        }
    }

    for (s_idx, s) in p.subnets.iter().enumerate() {
        let range = s.user_range();
        let (lo, hi) = (*range.start(), *range.end());
        for u in lo..=hi {
            let local: Vec<usize> = s
                .set(u - lo + 1)
                .iter()
                .map(|&t| s.to_global_tx(t))
                .collect();
            if local != reduced.set(u) {
                return Err(format!(
                    "user {u}: local sets do not match the reduced assignment"
                ));
            }
        }
        // Carrying transmitters reach every subnetwork receiver they can.
        for t in s.tx_span() {
            let carries = (lo..=hi).any(|u| reduced.carries(t, u));
            for rx in [t, t + 1] {
                if carries && (lo..=hi).contains(&rx) && !r.connected(rx, t) {
                    return Err(format!("{s}: link ({rx},{t}) is erased"));
                }
            }
        }
        // Interior transmitters carry a message of the subnetwork.
        for t in lo..hi {
            if !(lo..=hi).any(|u| reduced.carries(t, u)) {
                return Err(format!("{s}: transmitter {t} carries nothing"));
            }
        }
        // No internal split point: some coupling crosses every cut.
        for cut in lo..hi {
            let crosses = |left: RangeInclusive<usize>, right: RangeInclusive<usize>| {
                left.clone().any(|u| {
                    reduced
                        .set(u)
                        .iter()
                        .any(|&t| right.clone().any(|rx| r.connected(rx, t)))
                })
            };
            if !crosses(lo..=cut, cut + 1..=hi) && !crosses(cut + 1..=hi, lo..=cut) {
                return Err(format!("{s} splits at {cut}|{}", cut + 1));
            }
        }
        // Boundary condition on the first user; inactive receivers do not
        // couple anything.
        if lo > 1 {
            let hears_earlier = (1..lo).any(|x| reduced.set(x).iter().any(|&t| r.connected(lo, t)));
            let reaches_earlier = reduced
                .set(lo)
                .iter()
                .any(|&t| (1..lo).any(|rx| is_enabled(a, r, rx) && r.connected(rx, t)));
            if hears_earlier || reaches_earlier {
                return Err(format!("{s} is coupled to users before {lo}"));
            }
        }
        // No interference with any other subnetwork.
        for u in lo..=hi {
            for &t in reduced.set(u) {
                for rx in [t, t + 1] {
                    if rx >= 1 && rx <= k && r.connected(rx, t) {
                        if let Some(o) = owner[rx] {
                            if o != s_idx {
                                return Err(format!(
                                    "transmitter {t} carries W_{u} and reaches receiver {rx} of another subnetwork"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn verify_partition(p: &Partition, r: &NetworkRealization, a: &MessageAssignment) -> bool {
    check_partition(p, r, a).is_ok()
}
