use serde::Serialize;

use crate::padic::Valuation;

use super::multi_index::MultiIndex;
use super::series::{weighted_valuation, RadiusIndexedSeries};

/// Gauss norm ||f||_{G_m} in valuation form: min_k v(a_k) + m|k|, so a larger
/// value means a smaller norm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussNorm {
    pub value: Valuation,
    /// Lexicographically first index attaining the minimum.
    pub attained_at: MultiIndex,
}

impl GaussNorm {
    pub(crate) fn compute(f: &RadiusIndexedSeries, m: u32) -> GaussNorm {
        let mut best: Option<(Valuation, &MultiIndex)> = None;
        for (k, c) in f.terms() {
            let w = weighted_valuation(c, k, m);
            let better = match &best {
                None => true,
                Some((b, _)) => w.lower_bound() < b.lower_bound(),
            };
            if better {
                best = Some((w, k));
            }
        }
        match best {
            Some((value, k)) => GaussNorm { value, attained_at: k.clone() },
            None => GaussNorm { value: Valuation::AtLeast(f.field().precision()), attained_at: MultiIndex::zero(f.num_vars()) },
        }
    }
}
