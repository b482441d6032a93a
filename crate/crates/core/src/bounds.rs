//! Upper and lower bounds on the optimal cost and the error reported from them.

use crate::cost::{Cost, Ratio};
use crate::weight::WeightSpec;

/// Current lower bound `f^L` and upper bound `f(incumbent)` on the optimal
/// solution cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundPair {
    pub lower: Cost,
    /// Infinite until a solution is found.
    pub upper: Cost,
    /// g-cost of the node that realized `lower`, when it came from a live
    /// frontier node rather than from the upper bound itself.
    pub lower_witness_g: Option<Cost>,
}

impl BoundPair {
    pub fn unbounded() -> BoundPair {
        BoundPair {
            lower: Cost::ZERO,
            upper: Cost::INFINITY,
            lower_witness_g: None,
        }
    }

    pub fn exact(cost: Cost) -> BoundPair {
        BoundPair {
            lower: cost,
            upper: cost,
            lower_witness_g: None,
        }
    }

    /// `upper - lower`, or `None` before the first solution.
    pub fn difference(&self) -> Option<Cost> {
        self.upper
            .is_finite()
            .then(|| self.upper.saturating_sub(self.lower))
    }

    /// `upper / lower`. `None` before the first solution or when a positive
    /// upper bound meets a zero lower bound; `1` when both are zero.
    pub fn ratio(&self) -> Option<Ratio> {
        if self.upper.is_infinite() {
            return None;
        }
        if self.lower == Cost::ZERO {
            return (self.upper == Cost::ZERO).then(Ratio::one);
        }
        Some(Ratio::new(
            self.upper.value() as u128,
            self.lower.value() as u128,
        ))
    }

    /// The ratio capped at the weight `w`. With no finite ratio but an
    /// incumbent, the weight alone bounds the error.
    pub fn reported_ratio(&self, w: WeightSpec) -> Option<Ratio> {
        if self.upper.is_infinite() {
            return None;
        }
        Some(match self.ratio() {
            Some(r) => r.min(w.ratio()),
            None => w.ratio(),
        })
    }

    pub fn is_closed(&self) -> bool {
        self.lower == self.upper
    }
}

/// Error report derived from the incumbent and the least f over the frontier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorBound {
    pub bounds: BoundPair,
    pub difference: Option<Cost>,
    pub ratio: Option<Ratio>,
    pub reported_ratio: Option<Ratio>,
}

/// Computes bounds from the incumbent cost and the least f over Open.
///
/// `open_min_f == None` means Open is empty, in which case the incumbent is
/// optimal and the difference is zero.
pub fn error_bound(incumbent: Option<Cost>, open_min_f: Option<Cost>, w: WeightSpec) -> ErrorBound {
    let upper = incumbent.unwrap_or(Cost::INFINITY);
    let lower = match open_min_f {
        None => upper,
        Some(f) => f.min(upper),
    };
    let bounds = BoundPair {
        lower,
        upper,
        lower_witness_g: None,
    };
    ErrorBound {
        bounds,
        difference: bounds.difference(),
        ratio: bounds.ratio(),
        reported_ratio: bounds.reported_ratio(w),
    }
}

/// Keeps the reported lower bound monotone.
///
/// Every value ever observed is a valid lower bound on the optimal cost, so
/// their running maximum is too. Under an inconsistent heuristic the least f
/// over Open can dip after a reopening; the tracker keeps the earlier value.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LowerBoundTracker {
    lower: Cost,
    witness_g: Option<Cost>,
}

impl LowerBoundTracker {
    pub(crate) fn new() -> LowerBoundTracker {
        LowerBoundTracker {
            lower: Cost::ZERO,
            witness_g: None,
        }
    }

    /// Folds in a frontier minimum (`None` when the frontier is empty) and
    /// returns the current pair.
    pub(crate) fn observe(&mut self, frontier_min: Option<(Cost, Cost)>, upper: Cost) -> BoundPair {
        let (candidate, witness) = match frontier_min {
            Some((f, g)) if f < upper => (f, Some(g)),
            _ => (upper, None),
        };
        if candidate > self.lower {
            self.lower = candidate;
            self.witness_g = witness;
        }
        if self.lower > upper {
            self.lower = upper;
            self.witness_g = None;
        }
        BoundPair {
            lower: self.lower,
            upper,
            lower_witness_g: self.witness_g,
        }
    }
}
