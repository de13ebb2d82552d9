//! Message assignments: which transmitters know which message.
//!
//! `T_i` (the transmit set of user `i`) is stored sorted and 1-indexed. The
//! constructors here cover the cell-association strings, the two cooperative
//! assignments for `M = 2`, and the fraction-parameterized family used by the
//! sweeps. [`topology_reduce`] prunes an assignment against one realization.

use std::fmt;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{DofError, Result};
use crate::network::NetworkRealization;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageAssignment {
    k: usize,
    sets: Vec<Vec<usize>>,
}

impl MessageAssignment {
    /// Validates and normalizes (sorts, dedups) the transmit sets.
    pub fn new(k: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(DofError::InvalidAssignment("K must be at least 1".into()));
        }
        if sets.len() != k {
            return Err(DofError::InvalidAssignment(format!(
                "expected {k} transmit sets, got {}",
                sets.len()
            )));
        }
        let mut out = Vec::with_capacity(k);
        for (i, mut set) in sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(DofError::InvalidAssignment(format!(
                    "transmit set of user {} is empty",
                    i + 1
                )));
            }
            if let Some(&bad) = set.iter().find(|&&t| t == 0 || t > k) {
                return Err(DofError::InvalidAssignment(format!(
                    "user {} is assigned to transmitter {bad}, outside [1, {k}]",
                    i + 1
                )));
            }
            set.sort_unstable();
            set.dedup();
            out.push(set);
        }
        Ok(MessageAssignment { k, sets: out })
    }

    /// Sets may be empty (users dropped by reduction).
    pub(crate) fn from_sets_unchecked(k: usize, sets: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(sets.len(), k);
        MessageAssignment { k, sets }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `T_i`, 1-indexed user.
    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i - 1]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn carries(&self, tx: usize, user: usize) -> bool {
        self.set(user).binary_search(&tx).is_ok()
    }

    /// `M = max_i |T_i|`.
    pub fn cooperation_order(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Users whose message is known at transmitter `tx`.
    pub fn messages_at(&self, tx: usize) -> impl Iterator<Item = usize> + '_ {
        let lo = tx.saturating_sub(1).max(1);
        let hi = (tx + 2).min(self.k);
        (lo..=hi).filter(move |&i| self.carries(tx, i))
    }

    /// Checks the shape every scheduler in this crate relies on: each `T_i`
    /// is a run of at most two consecutive transmitters inside
    /// `{i-2, ..., i+1}` that contains `i-1` or `i`.
    pub fn check_local_shape(&self) -> Result<()> {
        for i in 1..=self.k {
            let set = self.set(i);
            if set.is_empty() {
                continue;
            }
            let ok = set.len() <= 2
                && set.windows(2).all(|w| w[1] == w[0] + 1)
                && set.iter().all(|&t| t + 2 >= i && t <= i + 1)
                && set.iter().any(|&t| t == i || t + 1 == i);
            if !ok {
                return Err(DofError::InvalidAssignment(format!(
                    "T_{i} = {set:?} is not a consecutive subset of {{i-2..i+1}} containing i-1 or i"
                )));
            }
        }
        Ok(())
    }
}

/// `N_j`: number of messages available at each transmitter.
pub fn counts_from_sets(a: &MessageAssignment) -> Vec<u32> {
    let mut counts = vec![0u32; a.k()];
    for set in a.sets() {
        for &t in set {
            counts[t - 1] += 1;
        }
    }
    counts
}

/// Reconstructs an `M = 1` irreducible assignment from its count sequence.
///
/// Blocks end at transmitters with no message; inside a block the unique
/// transmitter with two messages splits it into users served by their own
/// transmitter and users served by the preceding one. A trailing block
/// without a zero keeps `T_i = {i}`.
pub fn assignment_from_counts(counts: &[u32]) -> Result<MessageAssignment> {
    let k = counts.len();
    let bad = |reason: String| DofError::InvalidAssignment(reason);
    if k == 0 {
        return Err(bad("empty count sequence".into()));
    }
    let mut sets = vec![Vec::new(); k];
    let mut start = 1;
    while start <= k {
        let zero = (start..=k).find(|&j| counts[j - 1] == 0);
        match zero {
            Some(x) => {
                let twos: Vec<usize> = (start..x).filter(|&j| counts[j - 1] == 2).collect();
                if twos.len() != 1 || (start..x).any(|j| !(1..=2).contains(&counts[j - 1])) {
                    return Err(bad(format!(
                        "block {start}..={x} of {counts:?} is not a valid M=1 pattern"
                    )));
                }
                let y = twos[0];
                for (i, set) in sets.iter_mut().enumerate().take(x).skip(start - 1) {
                    let i = i + 1;
                    set.push(if i <= y { i } else { i - 1 });
                }
                start = x + 1;
            }
            None => {
                if (start..=k).any(|j| counts[j - 1] != 1) {
                    return Err(bad(format!(
                        "trailing block {start}..={k} of {counts:?} must be all ones"
                    )));
                }
                for (i, set) in sets.iter_mut().enumerate().skip(start - 1) {
                    set.push(i + 1);
                }
                start = k + 1;
            }
        }
    }
    Ok(MessageAssignment::from_sets_unchecked(k, sets))
}

/// A periodic per-transmitter message-count pattern over `{0, 1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryString(Vec<u8>);

impl TernaryString {
    /// Accepts `(1)` and the forms `(2,1..1,0)`, `(1..1,2,0)`,
    /// `(1..1,2,1..1,0)`: exactly one 2, a final 0, ones elsewhere.
    pub fn new(s: Vec<u8>) -> Result<Self> {
        let fail = |reason: &str| DofError::InvalidStrategy {
            string: s.clone(),
            reason: reason.into(),
        };
        if s.is_empty() {
            return Err(fail("empty string"));
        }
        if s.iter().any(|&v| v > 2) {
            return Err(fail("entries must be 0, 1 or 2"));
        }
        let sum: usize = s.iter().map(|&v| v as usize).sum();
        if sum != s.len() {
            return Err(fail("entries must sum to the string length"));
        }
        if s != [1] {
            let twos = s.iter().filter(|&&v| v == 2).count();
            let zeros = s.iter().filter(|&&v| v == 0).count();
            if twos != 1 || zeros != 1 || *s.last().unwrap() != 0 {
                return Err(fail(
                    "expected (1) or a string with a single 2, ones, and a final 0",
                ));
            }
        }
        Ok(TernaryString(s))
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Tiles the string over the first `n * floor(K/n)` transmitters and pads
    /// the rest with ones.
    pub fn counts(&self, k: usize) -> Vec<u32> {
        let n = self.len();
        let tiled = n * (k / n);
        (1..=k)
            .map(|i| {
                if i <= tiled {
                    self.0[(i - 1) % n] as u32
                } else {
                    1
                }
            })
            .collect()
    }
}

impl fmt::Display for TernaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn expand_ternary(s: &TernaryString, k: usize) -> Result<MessageAssignment> {
    if k < s.len() {
        return Err(DofError::InvalidStrategy {
            string: s.0.clone(),
            reason: format!("K = {k} is shorter than the string"),
        });
    }
    assignment_from_counts(&s.counts(k))
}

/// Five-user blocks with the fifth transmitter of each block silent.
pub fn theorem4_assignment(k: usize) -> MessageAssignment {
    assert!(k >= 1);
    let sets = (1..=k)
        .map(|i| {
            let raw: [isize; 2] = match i % 5 {
                2 | 4 => [i as isize - 1, i as isize],
                0 => [i as isize - 2, i as isize - 1],
                _ => [i as isize, i as isize + 1],
            };
            clip(&raw, k)
        })
        .collect();
    MessageAssignment::from_sets_unchecked(k, sets)
}

/// Every message at both transmitters that can reach its receiver.
pub fn theorem5_assignment(k: usize) -> MessageAssignment {
    assert!(k >= 1);
    let sets = (1..=k)
        .map(|i| clip(&[i as isize - 1, i as isize], k))
        .collect();
    MessageAssignment::from_sets_unchecked(k, sets)
}

fn clip(raw: &[isize], k: usize) -> Vec<usize> {
    raw.iter()
        .filter(|&&t| t >= 1 && t as usize <= k)
        .map(|&t| t as usize)
        .collect()
}

/// Fraction `f` of messages assigned forward (`{i, i+1}`, one transmitter for
/// delivery and one for cancellation); the rest get `{i-1, i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FractionStrategy {
    f: Ratio<i64>,
    k: usize,
}

impl FractionStrategy {
    pub fn new(f: Ratio<i64>, k: usize) -> Result<Self> {
        if f < Ratio::from_integer(0) || f > Ratio::from_integer(1) {
            return Err(DofError::config("f", format!("{f} is outside [0, 1]")));
        }
        if k < 3 {
            return Err(DofError::config("K", "the fraction family needs K >= 3"));
        }
        Ok(FractionStrategy { f, k })
    }

    /// Rounds `f` to six decimals so that grid values like 0.07 stay exact.
    pub fn from_f64(f: f64, k: usize) -> Result<Self> {
        if !f.is_finite() {
            return Err(DofError::config("f", "not a finite number"));
        }
        Self::new(Ratio::new((f * 1e6).round() as i64, 1_000_000), k)
    }

    pub fn f(&self) -> Ratio<i64> {
        self.f
    }
}

pub fn fraction_assignment(fs: &FractionStrategy) -> MessageAssignment {
    let k = fs.k;
    let kr = Ratio::from_integer(k as i64);
    let fk = fs.f * kr;
    let one = Ratio::from_integer(1);
    let two = Ratio::from_integer(2);

    // Family A: i = 1 + n * step for n in 1..=min(fK - 2, floor(K/2 - 1)).
    let mut forward = vec![false; k + 1];
    let a_bound = (fk - two).min((kr / two - one).floor());
    if a_bound >= one {
        let step = (kr / (fk - one)).floor().to_integer().max(2) as usize;
        let n_max = a_bound.floor().to_integer() as usize;
        for n in 1..=n_max {
            let i = 1 + n * step;
            if i <= k {
                forward[i] = true;
            }
        }
    }
    let mut family_b = vec![false; k + 1];
    let half = Ratio::new(1, 2);
    let b_bound = ((fs.f - half) * kr).ceil() - one;
    if b_bound >= one {
        for n in 1..=b_bound.to_integer() as usize {
            if 2 * n <= k {
                family_b[2 * n] = true;
            }
        }
    }

    let sets = (1..=k)
        .map(|i| {
            let raw: [isize; 2] = if i == 1 {
                if fk > one {
                    [1, 2]
                } else {
                    // {0, 1}: there is no transmitter 0 network-wide.
                    [0, 1]
                }
            } else if i == k {
                [k as isize - 2, k as isize - 1]
            } else if forward[i] || family_b[i] {
                [i as isize, i as isize + 1]
            } else {
                [i as isize - 1, i as isize]
            };
            clip(&raw, k)
        })
        .collect();
    MessageAssignment::from_sets_unchecked(k, sets)
}

/// Number of users with `T_i = {i, i+1}`.
pub fn forward_count(a: &MessageAssignment) -> usize {
    (1..=a.k()).filter(|&i| a.set(i) == [i, i + 1]).count()
}

/// Whether some transmitter carrying `W_user` reaches receiver `user`.
pub fn is_enabled(a: &MessageAssignment, r: &NetworkRealization, user: usize) -> bool {
    a.set(user).iter().any(|&t| r.connected(user, t))
}

/// Topology reduction for one realization.
///
/// Users whose message is not enabled get an empty transmit set. For every
/// other user `i`, transmitters `x, y` in `T_i` are adjacent when they reach a
/// common receiver that is still present (enabled); vertex `i` is marked when
/// `H_{i,i}` survives and `i-1` when `H_{i,i-1}` survives. Only transmitters in
/// a component holding a mark are kept.
pub fn topology_reduce(a: &MessageAssignment, r: &NetworkRealization) -> MessageAssignment {
    let k = a.k();
    assert_eq!(k, r.k(), "assignment and realization sizes differ");
    let enabled: Vec<bool> = (1..=k).map(|i| is_enabled(a, r, i)).collect();
    let rx_alive = |rx: usize| rx >= 1 && rx <= k && enabled[rx - 1];
    let share_receiver = |x: usize, y: usize| {
        let lo = x.min(y);
        let hi = x.max(y);
        // Transmitters reach {t, t+1}; a common receiver exists only if hi <= lo + 1.
        (hi..=lo + 1).any(|rx| rx_alive(rx) && r.connected(rx, x) && r.connected(rx, y))
    };

    let sets = (1..=k)
        .map(|i| {
            if !enabled[i - 1] {
                return Vec::new();
            }
            let verts = a.set(i);
            let marked: Vec<bool> = verts.iter().map(|&t| r.connected(i, t)).collect();
            let mut keep = marked.clone();
            // Flood from marked vertices; sets are tiny.
            let mut changed = true;
            while changed {
                changed = false;
                for x in 0..verts.len() {
                    if keep[x] {
                        continue;
                    }
                    if (0..verts.len()).any(|y| keep[y] && share_receiver(verts[x], verts[y])) {
                        keep[x] = true;
                        changed = true;
                    }
                }
            }
            verts
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(&t, _)| t)
                .collect()
        })
        .collect();
    MessageAssignment::from_sets_unchecked(k, sets)
}

/// Strategy configuration as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum Strategy {
    Ternary { s: Vec<u8> },
    Theorem4,
    Theorem5,
    Fraction { f: f64 },
    Explicit { sets: Vec<Vec<usize>> },
}

impl Strategy {
    /// Parses the JSON form; errors name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| DofError::config("strategy", format!("malformed JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| DofError::config("strategy", "expected a JSON object"))?;
        let ty = obj
            .get("type")
            .ok_or_else(|| DofError::config("type", "missing"))?
            .as_str()
            .ok_or_else(|| DofError::config("type", "must be a string"))?;
        let field = match ty {
            "ternary" => "s",
            "fraction" => "f",
            "explicit" => "sets",
            "theorem4" | "theorem5" => "type",
            other => {
                return Err(DofError::config(
                    "type",
                    format!("unknown strategy `{other}`"),
                ))
            }
        };
        let strategy: Strategy = serde_json::from_value(value.clone())
            .map_err(|e| DofError::config(field, e.to_string()))?;
        strategy.validate()?;
        Ok(strategy)
    }

    fn validate(&self) -> Result<()> {
        match self {
            Strategy::Ternary { s } => {
                TernaryString::new(s.clone()).map_err(|e| DofError::config("s", e.to_string()))?;
            }
            Strategy::Fraction { f } => {
                if !(0.0..=1.0).contains(f) {
                    return Err(DofError::config("f", format!("{f} is outside [0, 1]")));
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn build(&self, k: usize) -> Result<MessageAssignment> {
        match self {
            Strategy::Ternary { s } => expand_ternary(&TernaryString::new(s.clone())?, k),
            Strategy::Theorem4 => Ok(theorem4_assignment(k)),
            Strategy::Theorem5 => Ok(theorem5_assignment(k)),
            Strategy::Fraction { f } => {
                Ok(fraction_assignment(&FractionStrategy::from_f64(*f, k)?))
            }
            Strategy::Explicit { sets } => MessageAssignment::new(k, sets.clone()),
        }
    }

    /// Cooperation order of the strategy for large `K`.
    pub fn nominal_order(&self) -> usize {
        match self {
            Strategy::Ternary { .. } => 1,
            Strategy::Explicit { sets } => sets.iter().map(Vec::len).max().unwrap_or(0),
            _ => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("strategy serializes")
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Ternary { s } => {
                let parts: Vec<String> = s.iter().map(u8::to_string).collect();
                write!(f, "ternary({})", parts.join(" "))
            }
            Strategy::Theorem4 => write!(f, "theorem4"),
            Strategy::Theorem5 => write!(f, "theorem5"),
            Strategy::Fraction { f: v } => write!(f, "fraction({v})"),
            Strategy::Explicit { .. } => write!(f, "explicit"),
        }
    }
}

/// Fraction of users assigned forward, as a float.
pub fn forward_fraction(a: &MessageAssignment) -> f64 {
    forward_count(a).to_f64().unwrap() / a.k() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{NetworkRealization, NetworkTopology};

    fn ts(s: &[u8]) -> TernaryString {
        TernaryString::new(s.to_vec()).unwrap()
    }

    #[test]
    fn expand_identity() {
        let a = expand_ternary(&ts(&[1]), 4).unwrap();
        assert_eq!(a.sets(), &[vec![1], vec![2], vec![3], vec![4]]);
    }

    #[test]
    fn expand_low_p_string() {
        let a = expand_ternary(&ts(&[2, 1, 0]), 6).unwrap();
        assert_eq!(
            a.sets(),
            &[vec![1], vec![1], vec![2], vec![4], vec![4], vec![5]]
        );
    }

    #[test]
    fn expand_middle_p_string() {
        let a = expand_ternary(&ts(&[1, 2, 1, 0]), 8).unwrap();
        assert_eq!(
            a.sets(),
            &[
                vec![1],
                vec![2],
                vec![2],
                vec![3],
                vec![5],
                vec![6],
                vec![6],
                vec![7]
            ]
        );
    }

    #[test]
    fn expand_pads_with_ones() {
        let a = expand_ternary(&ts(&[2, 1, 0]), 5).unwrap();
        assert_eq!(a.sets(), &[vec![1], vec![1], vec![2], vec![4], vec![5]]);
    }

    #[test]
    fn invalid_strings() {
        assert!(TernaryString::new(vec![2, 1]).is_err());
        assert!(TernaryString::new(vec![1, 1]).is_err());
        assert!(TernaryString::new(vec![2, 0, 1]).is_err());
        assert!(TernaryString::new(vec![3, 0, 0]).is_err());
        assert!(TernaryString::new(vec![]).is_err());
        assert!(TernaryString::new(vec![2, 0]).is_ok());
    }

    #[test]
    fn counts_examples() {
        let a = MessageAssignment::new(2, vec![vec![1], vec![2]]).unwrap();
        assert_eq!(counts_from_sets(&a), vec![1, 1]);
        let a = MessageAssignment::new(3, vec![vec![1], vec![1], vec![2]]).unwrap();
        assert_eq!(counts_from_sets(&a), vec![2, 1, 0]);
        assert_eq!(assignment_from_counts(&[2, 1, 0]).unwrap(), a);
    }

    #[test]
    fn bad_counts_rejected() {
        assert!(assignment_from_counts(&[1, 1, 0]).is_err());
        assert!(assignment_from_counts(&[2, 2, 0, 0]).is_err());
        assert!(assignment_from_counts(&[2, 1]).is_err());
    }

    #[test]
    fn theorem4_examples() {
        let a = theorem4_assignment(5);
        assert_eq!(
            a.sets(),
            &[vec![1, 2], vec![1, 2], vec![3, 4], vec![3, 4], vec![3, 4]]
        );
        let a = theorem4_assignment(12);
        assert_eq!(a.set(7), &[6, 7]);
        assert_eq!(a.set(10), &[8, 9]);
        assert_eq!(a.cooperation_order(), 2);
        assert!(a.check_local_shape().is_ok());
        // Transmitters 5 and 10 carry nothing.
        let counts = counts_from_sets(&a);
        assert_eq!(counts[4], 0);
        assert_eq!(counts[9], 0);
    }

    #[test]
    fn theorem5_examples() {
        assert_eq!(
            theorem5_assignment(3).sets(),
            &[vec![1], vec![1, 2], vec![2, 3]]
        );
        assert_eq!(theorem5_assignment(1).sets(), &[vec![1]]);
        let a = theorem5_assignment(20);
        assert!((2..=20).all(|i| a.set(i).len() == 2));
        assert_eq!(a.cooperation_order(), 2);
    }

    #[test]
    fn fraction_zero_matches_theorem5_interior() {
        let k = 12;
        let a = fraction_assignment(&FractionStrategy::from_f64(0.0, k).unwrap());
        let t5 = theorem5_assignment(k);
        for i in 1..k {
            assert_eq!(a.set(i), t5.set(i), "user {i}");
        }
        assert_eq!(a.set(k), &[k - 2, k - 1]);
    }

    #[test]
    fn fraction_one_saturates() {
        let a = fraction_assignment(&FractionStrategy::from_f64(1.0, 10).unwrap());
        assert_eq!(forward_count(&a), 9);
        assert!((1..10).all(|i| a.set(i) == [i, i + 1]));
        assert_eq!(a.set(10), &[8, 9]);
    }

    #[test]
    fn fraction_three_fifths() {
        let a = fraction_assignment(&FractionStrategy::from_f64(0.6, 100).unwrap());
        assert!((forward_fraction(&a) - 0.6).abs() <= 0.01 + 1e-12);
        assert!(a.check_local_shape().is_ok());
    }

    #[test]
    fn fraction_small_f_drops_transmitter_zero() {
        let a = fraction_assignment(&FractionStrategy::from_f64(0.01, 100).unwrap());
        assert_eq!(a.set(1), &[1]);
        let a = fraction_assignment(&FractionStrategy::from_f64(0.02, 100).unwrap());
        assert_eq!(a.set(1), &[1, 2]);
    }

    #[test]
    fn reduce_no_erasures_is_identity() {
        let t = NetworkTopology::new(10);
        let r = NetworkRealization::all_present(t);
        for a in [theorem4_assignment(10), theorem5_assignment(10)] {
            assert_eq!(topology_reduce(&a, &r), a);
        }
    }

    #[test]
    fn reduce_drops_disabled_user() {
        let t = NetworkTopology::new(5);
        let r = NetworkRealization::with_erased(t, &[(3, 2), (3, 3)]);
        let a = theorem5_assignment(5);
        let red = topology_reduce(&a, &r);
        assert!(red.set(3).is_empty());
        assert_eq!(red.set(2), &[1, 2]);
    }

    #[test]
    fn reduce_cross_link_only() {
        // T_3 = {2,3}: (3,2) erased, (3,3) present. Vertex 3 is marked; 2 and 3
        // share no receiver other than 3 (needs (3,2)), so 2 is dropped.
        let t = NetworkTopology::new(5);
        let r = NetworkRealization::with_erased(t, &[(3, 2)]);
        let red = topology_reduce(&theorem5_assignment(5), &r);
        assert_eq!(red.set(3), &[3]);
    }

    #[test]
    fn strategy_json() {
        let s = Strategy::from_json(r#"{"type":"ternary","s":[2,1,0]}"#).unwrap();
        assert_eq!(s, Strategy::Ternary { s: vec![2, 1, 0] });
        assert_eq!(
            Strategy::from_json(r#"{"type":"theorem4"}"#).unwrap(),
            Strategy::Theorem4
        );
        let e = Strategy::from_json(r#"{"type":"fraction","f":"x"}"#).unwrap_err();
        assert!(
            matches!(e, DofError::Config { ref field, .. } if field == "f"),
            "{e}"
        );
        let e = Strategy::from_json(r#"{"type":"ternary","s":[1,1]}"#).unwrap_err();
        assert!(
            matches!(e, DofError::Config { ref field, .. } if field == "s"),
            "{e}"
        );
        let e = Strategy::from_json(r#"{"type":"nope"}"#).unwrap_err();
        assert!(
            matches!(e, DofError::Config { ref field, .. } if field == "type"),
            "{e}"
        );
        let e = Strategy::from_json(r#"{"type":"fraction","f":1.5}"#).unwrap_err();
        assert!(
            matches!(e, DofError::Config { ref field, .. } if field == "f"),
            "{e}"
        );
        let s = Strategy::from_json(r#"{"type":"explicit","sets":[[1],[1,2]]}"#).unwrap();
        assert_eq!(s.build(2).unwrap().set(2), &[1, 2]);
        assert!(Strategy::from_json("{").is_err());
    }
}
