//! Greedy zero-forcing scheduling inside atomic subnetworks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;

use crate::assignment::MessageAssignment;
use crate::error::{DofError, Result};
use crate::network::{ChannelCoefficients, NetworkRealization};
use crate::partition::{partition_atomic, AtomicSubnetwork};

/// Beam decisions `b_{i,j}` for `j ∈ {i-2, i-1, i, i+1}` (local indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    b: Vec<[bool; 4]>,
}

impl Schedule {
    fn new(n: usize) -> Self {
        Schedule {
            b: vec![[false; 4]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// `b_{i,j}`; false whenever `(i, j)` is outside the stored window.
    pub fn b(&self, i: isize, j: isize) -> bool {
        if i < 1 || i as usize > self.n() {
            return false;
        }
        let col = j - (i - 2);
        (0..4).contains(&col) && self.b[i as usize - 1][col as usize]
    }

    fn set(&mut self, i: isize, j: isize) {
        let col = j - (i - 2);
        assert!(i >= 1 && (0..4).contains(&col));
        self.b[i as usize - 1][col as usize] = true;
    }

    /// Transmitter carrying the data beam of `W_i`, if delivered.
    pub fn data_tx(&self, i: usize) -> Option<usize> {
        let ii = i as isize;
        if self.b(ii, ii - 1) {
            Some(i - 1)
        } else if self.b(ii, ii) {
            Some(i)
        } else {
            None
        }
    }

    /// Transmitter carrying the cancellation beam of `W_i`, if any.
    pub fn cancel_tx(&self, i: usize) -> Option<usize> {
        let ii = i as isize;
        if self.b(ii, ii - 2) {
            Some(i - 2)
        } else if self.b(ii, ii + 1) {
            Some(i + 1)
        } else {
            None
        }
    }

    pub fn delivered(&self) -> Vec<usize> {
        (1..=self.n())
            .filter(|&i| self.data_tx(i).is_some())
            .collect()
    }

    pub fn dof(&self) -> usize {
        self.delivered().len()
    }

    /// One line per message: `i: b_{i,i-2} b_{i,i-1} b_{i,i} b_{i,i+1}` as 0/1.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.b.iter().enumerate() {
            let bits: String = row.iter().map(|&x| if x { '1' } else { '0' }).collect();
            let _ = writeln!(out, "{}: {}", i + 1, bits);
        }
        out
    }

    /// Structural consistency with the subnetwork it was computed for.
    pub fn check(&self, sub: &AtomicSubnetwork) -> std::result::Result<(), String> {
        for i in 1..=self.n() {
            let ii = i as isize;
            for j in ii - 2..=ii + 1 {
                if self.b(ii, j) && !sub.has(ii, j) {
                    return Err(format!("b_{{{i},{j}}} set but {j} is not in T_{i}"));
                }
            }
            if self.b(ii, ii - 1) && self.b(ii, ii) {
                return Err(format!("W_{i} has two data beams"));
            }
            if self.b(ii, ii - 2) && self.b(ii, ii + 1) {
                return Err(format!("W_{i} has two cancellation beams"));
            }
            if self.cancel_tx(i).is_some() && self.data_tx(i).is_none() {
                return Err(format!("W_{i} is cancelled but never sent"));
            }
        }
        Ok(())
    }
}

/// Runs the single forward decision pass over an atomic subnetwork.
///
/// Only link presence and message availability are consulted. Messages 1 and
/// 2 are special-cased; every later `W_i` first tries transmitter `i-1`
/// (possibly cancelling at receiver `i-1` through transmitter `i-2`, or jointly
/// with `W_{i-1}`), then transmitter `i`.
pub fn schedule_atomic(sub: &AtomicSubnetwork) -> Schedule {
    let n = sub.n() as isize;
    let t = |i: isize, j: isize| sub.has(i, j);
    let h10 = sub.h10();
    let mut s = Schedule::new(sub.n());

    if h10 && t(1, 0) {
        s.set(1, 0);
    } else if t(1, 1) {
        s.set(1, 1);
    }

    if n >= 2 {
        if t(2, 1) && !s.b(1, 1) && t(2, 0) && h10 {
            s.set(2, 1);
            s.set(2, 0);
        } else if t(2, 0) && h10 && t(1, 2) {
            s.set(2, 1);
            s.set(2, 0);
            s.set(1, 2);
            s.set(1, 1);
        } else if t(2, 2) {
            if !s.b(1, 1) {
                s.set(2, 2);
            } else if t(1, 2) {
                s.set(2, 2);
                s.set(1, 2);
            }
        }
    }

    for i in 3..=n {
        if t(i, i - 1) && !s.b(i - 1, i - 1) {
            if !s.b(i - 1, i - 2) {
                s.set(i, i - 1);
            } else if t(i, i - 2) && !s.b(i - 2, i - 2) && !s.b(i - 2, i - 3) {
                s.set(i, i - 1);
                s.set(i, i - 2);
            }
        } else if t(i, i - 2) && t(i - 1, i) && !s.b(i - 2, i - 3) && !s.b(i - 2, i - 2) {
            s.set(i, i - 1);
            s.set(i, i - 2);
            s.set(i - 1, i);
            s.set(i - 1, i - 1);
        }
        if t(i, i) && !s.b(i, i - 1) && !s.b(i - 2, i - 1) {
            if !s.b(i - 1, i - 1) {
                s.set(i, i);
            } else if t(i - 1, i) {
                s.set(i, i);
                s.set(i - 1, i);
            }
        }
    }
    s
}

pub type Coefficient = Ratio<i128>;

/// Transmit signals as linear combinations of message codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeamPlan {
    /// Local transmitter -> (message, coefficient).
    pub signals: BTreeMap<usize, Vec<(usize, Coefficient)>>,
}

impl BeamPlan {
    pub fn coefficient(&self, tx: usize, message: usize) -> Coefficient {
        self.signals
            .get(&tx)
            .and_then(|terms| terms.iter().find(|(m, _)| *m == message))
            .map(|(_, c)| *c)
            .unwrap_or_else(|| Ratio::from_integer(0))
    }

    pub fn num_terms(&self) -> usize {
        self.signals.values().map(Vec::len).sum()
    }
}

/// Local channel gain of a subnetwork, looked up in global coefficients.
pub fn local_gain(sub: &AtomicSubnetwork, c: &ChannelCoefficients, rx: usize, tx: usize) -> i64 {
    if !sub.link(rx, tx) {
        return 0;
    }
    c.get(sub.to_global_user(rx), sub.to_global_tx(tx))
}

/// Composes transmit signals: unit data beams plus cancellation beams that
/// null the data beam at the receiver both transmitters reach.
pub fn build_beams(s: &Schedule, sub: &AtomicSubnetwork, c: &ChannelCoefficients) -> BeamPlan {
    let mut signals: BTreeMap<usize, Vec<(usize, Coefficient)>> = BTreeMap::new();
    for i in s.delivered() {
        let d = s.data_tx(i).unwrap();
        signals
            .entry(d)
            .or_default()
            .push((i, Ratio::from_integer(1)));
        if let Some(ct) = s.cancel_tx(i) {
            let rx = d.max(ct);
            let num = local_gain(sub, c, rx, d);
            let den = local_gain(sub, c, rx, ct);
            assert!(den != 0, "cancellation through an absent link ({rx},{ct})");
            signals
                .entry(ct)
                .or_default()
                .push((i, Ratio::new(-(num as i128), den as i128)));
        }
    }
    BeamPlan { signals }
}

/// Recomputes what every active receiver observes. Returns the first
/// receiver that sees interference or loses its own message.
pub fn verify_beams(
    plan: &BeamPlan,
    s: &Schedule,
    sub: &AtomicSubnetwork,
    c: &ChannelCoefficients,
) -> std::result::Result<(), String> {
    let delivered = s.delivered();
    for &rx in &delivered {
        // Only messages carried by the two transmitters rx hears can reach it.
        let mut heard: Vec<usize> = [rx - 1, rx]
            .iter()
            .filter_map(|tx| plan.signals.get(tx))
            .flat_map(|terms| terms.iter().map(|(m, _)| *m))
            .chain([rx])
            .collect();
        heard.sort_unstable();
        heard.dedup();
        for m in heard {
            let net: Coefficient = [rx - 1, rx]
                .iter()
                .map(|&tx| {
                    Ratio::from_integer(local_gain(sub, c, rx, tx) as i128)
                        * plan.coefficient(tx, m)
                })
                .sum();
            if m == rx && net == Ratio::from_integer(0) {
                return Err(format!("receiver {rx} does not hear its own message"));
            }
            if m != rx && net != Ratio::from_integer(0) {
                return Err(format!("receiver {rx} hears W_{m}"));
            }
        }
    }
    Ok(())
}

/// Zero-forcing DoF of a whole realization: reduce, partition, schedule each
/// atomic subnetwork and add up the delivered messages.
pub fn zf_dof(r: &NetworkRealization, a: &MessageAssignment) -> Result<usize> {
    check_supported(a)?;
    Ok(partition_atomic(r, a)
        .subnets
        .iter()
        .map(|sub| schedule_atomic(sub).dof())
        .sum())
}

/// Like [`zf_dof`] but also builds and checks the beams of every subnetwork.
pub fn zf_dof_verified(
    r: &NetworkRealization,
    a: &MessageAssignment,
    c: &ChannelCoefficients,
) -> Result<usize> {
    check_supported(a)?;
    let mut total = 0;
    for sub in partition_atomic(r, a).subnets {
        let s = schedule_atomic(&sub);
        s.check(&sub).map_err(DofError::SchemeMismatch)?;
        let plan = build_beams(&s, &sub, c);
        verify_beams(&plan, &s, &sub, c).map_err(DofError::SchemeMismatch)?;
        total += s.dof();
    }
    Ok(total)
}

fn check_supported(a: &MessageAssignment) -> Result<()> {
    let m = a.cooperation_order();
    if m > 2 {
        return Err(DofError::UnsupportedCooperation { found: m, max: 2 });
    }
    a.check_local_shape()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::{theorem4_assignment, theorem5_assignment};
    use crate::network::{sample_coefficients, NetworkTopology};

    fn local(sets: &[&[usize]], h10: bool, h_nn: bool) -> AtomicSubnetwork {
        AtomicSubnetwork::from_local(sets.iter().map(|s| s.to_vec()).collect(), h10, h_nn)
    }

    #[test]
    fn single_user() {
        let s = schedule_atomic(&local(&[&[1]], false, true));
        assert!(s.b(1, 1));
        assert_eq!(s.dof(), 1);
        assert_eq!(s.dump(), "1: 0010\n");
    }

    #[test]
    fn theorem4_subnetwork() {
        let sub = local(&[&[1, 2], &[1, 2], &[3, 4], &[3, 4], &[3, 4]], false, false);
        let s = schedule_atomic(&sub);
        assert_eq!(s.delivered(), vec![1, 2, 4, 5]);
        assert_eq!(s.dump(), "1: 0011\n2: 0010\n3: 0000\n4: 0100\n5: 1100\n");
        assert!(s.check(&sub).is_ok());
    }

    #[test]
    fn adjacent_pairs_both_boundaries_out() {
        let sub = local(&[&[1], &[1, 2], &[2, 3], &[3, 4], &[4]], false, false);
        assert_eq!(schedule_atomic(&sub).dof(), 3);
    }

    #[test]
    fn message_two_through_its_own_transmitter() {
        // W_1 leaves through transmitter 0, which frees transmitter 2 for W_2.
        let sub = local(&[&[0, 1], &[1, 2]], true, true);
        let s = schedule_atomic(&sub);
        assert_eq!(s.delivered(), vec![1, 2]);
        assert!(s.b(2, 2));
    }

    #[test]
    fn beams_cancel_interference() {
        let (r, a) = local(&[&[1, 2], &[1, 2], &[3, 4], &[3, 4], &[3, 4]], false, false).embed();
        let sub = partition_atomic(&r, &a).subnets.remove(0);
        let c = sample_coefficients(&r, 5);
        let s = schedule_atomic(&sub);
        let plan = build_beams(&s, &sub, &c);
        assert!(verify_beams(&plan, &s, &sub, &c).is_ok());
        // W_1 is cancelled at receiver 2 through transmitter 2.
        let expected = Ratio::new(
            -(local_gain(&sub, &c, 2, 1) as i128),
            local_gain(&sub, &c, 2, 2) as i128,
        );
        assert_eq!(plan.coefficient(2, 1), expected);
        assert_eq!(plan.num_terms(), 6);
    }

    #[test]
    fn tampered_plan_fails_verification() {
        let (r, a) = local(&[&[1, 2], &[1, 2], &[3, 4], &[3, 4], &[3, 4]], false, false).embed();
        let sub = partition_atomic(&r, &a).subnets.remove(0);
        let c = sample_coefficients(&r, 5);
        let s = schedule_atomic(&sub);
        let mut plan = build_beams(&s, &sub, &c);
        plan.signals.get_mut(&2).unwrap().retain(|(m, _)| *m != 1);
        assert!(verify_beams(&plan, &s, &sub, &c).is_err());
    }

    #[test]
    fn whole_network_examples() {
        let t = NetworkTopology::with_last_tx_deactivated(5);
        let r = NetworkRealization::all_present(t);
        assert_eq!(zf_dof(&r, &theorem4_assignment(5)).unwrap(), 4);
        assert_eq!(
            zf_dof(&NetworkRealization::all_erased(t), &theorem4_assignment(5)).unwrap(),
            0
        );

        let t3 = NetworkTopology::new(3);
        let r = NetworkRealization::with_erased(t3, &[(2, 1), (3, 2)]);
        assert_eq!(zf_dof(&r, &theorem5_assignment(3)).unwrap(), 3);
    }

    #[test]
    fn cooperation_above_two_is_rejected() {
        let t = NetworkTopology::new(3);
        let r = NetworkRealization::all_present(t);
        let a = MessageAssignment::new(3, vec![vec![1], vec![1, 2, 3], vec![3]]).unwrap();
        assert_eq!(
            zf_dof(&r, &a),
            Err(DofError::UnsupportedCooperation { found: 3, max: 2 })
        );
    }
}
