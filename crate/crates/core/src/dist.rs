//! Finite-support probability distributions with a tracked truncation defect.
//!
//! A [`DiscreteDist`] maps canonical values to positive weights. Mass that was
//! cut away (a truncated Poisson tail, pruned underflow) is recorded in
//! `defect` and never redistributed, so `mass() + defect() == 1` up to rounding.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::region::Region;
use crate::scalar::{Weight, MAX_SUPPORT, PRUNE_BELOW};
use crate::space::{Numeric, Point};

/// Allowed deviation of `mass + defect` from one.
pub const MASS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct DiscreteDist<T, W = f64> {
    support: BTreeMap<T, W>,
    defect: W,
}

impl<T: Ord + Clone, W: Weight> DiscreteDist<T, W> {
    /// Builds a distribution from `(value, weight)` pairs summing to one.
    pub fn new(entries: impl IntoIterator<Item = (T, W)>) -> Result<Self> {
        Self::with_defect(entries, W::zero())
    }

    /// Builds a distribution whose weights sum to `1 - defect`.
    pub fn with_defect(entries: impl IntoIterator<Item = (T, W)>, defect: W) -> Result<Self> {
        let mut support = BTreeMap::new();
        for (x, w) in entries {
            let wf = w.as_f64();
            if !(wf.is_finite() && wf >= 0.0) {
                return Err(Error::invalid(format!("weight {w:?} is not a probability")));
            }
            if w > W::zero() {
                accumulate(&mut support, x, w);
            }
        }
        let d = defect.as_f64();
        if !(0.0..=1.0).contains(&d) {
            return Err(Error::invalid(format!("defect {defect:?} outside [0,1]")));
        }
        let dist = DiscreteDist { support, defect };
        let total = (dist.mass() + dist.defect.clone()).as_f64();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::invalid(format!(
                "weights plus defect sum to {total}, expected 1"
            )));
        }
        Ok(dist)
    }

    pub(crate) fn from_parts(support: BTreeMap<T, W>, defect: W) -> Self {
        DiscreteDist { support, defect }
    }

    /// The point mass `δ_x`.
    pub fn point(x: T) -> Self {
        DiscreteDist {
            support: BTreeMap::from([(x, W::one())]),
            defect: W::zero(),
        }
    }

    /// Equal weight on each value (duplicates accumulate).
    pub fn uniform(xs: impl IntoIterator<Item = T>) -> Result<Self> {
        let xs: Vec<T> = xs.into_iter().collect();
        if xs.is_empty() {
            return Err(Error::invalid("uniform distribution over an empty set"));
        }
        let w = W::one() / W::from_usize(xs.len()).expect("small count");
        Self::new(xs.into_iter().map(|x| (x, w.clone())))
    }

    pub fn defect(&self) -> &W {
        &self.defect
    }

    /// Total weight on the support, `1 - defect`.
    pub fn mass(&self) -> W {
        self.support.values().fold(W::zero(), |a, w| a + w.clone())
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn iter(&self) -> std::collections::btree_map::Iter<'_, T, W> {
        self.support.iter()
    }

    pub fn weight(&self, x: &T) -> W {
        self.support.get(x).cloned().unwrap_or_else(W::zero)
    }

    /// Probability of the set `{x | pred(x)}`.
    pub fn prob(&self, mut pred: impl FnMut(&T) -> bool) -> W {
        self.support
            .iter()
            .filter(|(x, _)| pred(x))
            .fold(W::zero(), |a, (_, w)| a + w.clone())
    }

    /// Pushforward along `f`.
    pub fn map<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> DiscreteDist<U, W> {
        let mut support = BTreeMap::new();
        for (x, w) in &self.support {
            accumulate(&mut support, f(x), w.clone());
        }
        DiscreteDist {
            support,
            defect: self.defect.clone(),
        }
    }

    /// Kleisli extension: the mixture `Σ w(x)·f(x)`.
    pub fn bind<U: Ord + Clone>(
        &self,
        mut f: impl FnMut(&T) -> DiscreteDist<U, W>,
    ) -> Result<DiscreteDist<U, W>> {
        self.try_bind(|x| Ok(f(x)))
    }

    /// [`bind`](Self::bind) with a fallible kernel.
    pub fn try_bind<U: Ord + Clone>(
        &self,
        mut f: impl FnMut(&T) -> Result<DiscreteDist<U, W>>,
    ) -> Result<DiscreteDist<U, W>> {
        let mut support = BTreeMap::new();
        let mut defect = self.defect.clone();
        for (x, w) in &self.support {
            let k = f(x)?;
            defect = defect + w.clone() * k.defect.clone();
            for (y, v) in k.support {
                accumulate(&mut support, y, w.clone() * v);
                guard(support.len(), "bind support")?;
            }
        }
        Ok(DiscreteDist { support, defect }.pruned())
    }

    /// Independent product, supported on tuples.
    pub fn product(ds: &[DiscreteDist<T, W>]) -> Result<DiscreteDist<Vec<T>, W>> {
        let size = ds
            .iter()
            .try_fold(1usize, |acc, d| acc.checked_mul(d.support_len().max(1)));
        match size {
            Some(n) if n <= MAX_SUPPORT => {}
            _ => {
                return Err(Error::ResourceLimit {
                    what: "product support",
                    limit: MAX_SUPPORT,
                })
            }
        }
        let mut rows: Vec<(Vec<T>, W)> = vec![(Vec::new(), W::one())];
        let mut kept = W::one();
        for d in ds {
            kept = kept * (W::one() - d.defect.clone());
            let mut next = Vec::with_capacity(rows.len() * d.support_len());
            for (tuple, w) in &rows {
                for (x, v) in &d.support {
                    let mut t = tuple.clone();
                    t.push(x.clone());
                    next.push((t, w.clone() * v.clone()));
                }
            }
            rows = next;
        }
        let support: BTreeMap<Vec<T>, W> = rows.into_iter().collect();
        let defect = (W::one() - kept).clamp_nonneg();
        Ok(DiscreteDist { support, defect }.pruned())
    }

    /// Total variation distance, counting the defects as one extra outcome.
    pub fn total_variation(&self, other: &Self) -> W {
        let mut sum = self.defect.abs_diff(&other.defect);
        for (x, w) in &self.support {
            sum = sum + w.abs_diff(&other.weight(x));
        }
        for (x, w) in &other.support {
            if !self.support.contains_key(x) {
                sum = sum + w.clone();
            }
        }
        sum / (W::one() + W::one())
    }

    /// Inverse-CDF lookup in support order. A `u` falling in the defect maps to
    /// the last support value.
    pub fn pick(&self, u: f64) -> Option<&T> {
        let mut acc = 0.0;
        let mut last = None;
        for (x, w) in &self.support {
            acc += w.as_f64();
            if u < acc {
                return Some(x);
            }
            last = Some(x);
        }
        last
    }

    /// Moves weights below [`PRUNE_BELOW`] into the defect.
    fn pruned(mut self) -> Self {
        let cut = W::lossy(PRUNE_BELOW);
        let mut dropped = W::zero();
        self.support.retain(|_, w| {
            if *w < cut {
                dropped = dropped.clone() + w.clone();
                false
            } else {
                true
            }
        });
        self.defect = self.defect + dropped;
        self
    }

    /// JSON dump: `{"support": [{<key>: value, "p": weight}...], "defect": d}`.
    pub fn to_json(&self, key: &str) -> Value
    where
        T: Serialize,
    {
        let rows: Vec<Value> = self
            .support
            .iter()
            .map(|(x, w)| {
                let mut row = serde_json::Map::new();
                row.insert(key.to_string(), json!(x));
                row.insert("p".to_string(), json!(w.as_f64()));
                Value::Object(row)
            })
            .collect();
        json!({ "support": rows, "defect": self.defect.as_f64() })
    }
}

impl<T: Ord + Clone + Numeric, W: Weight> DiscreteDist<T, W> {
    /// `Σ x·w(x)`; the defect contributes nothing.
    pub fn expectation(&self) -> Result<W> {
        let mut acc = W::zero();
        for (x, w) in &self.support {
            let v = x
                .numeric_value()
                .ok_or_else(|| Error::invalid("expectation of a non-numeric value"))?;
            acc = acc + W::lossy(v) * w.clone();
        }
        Ok(acc)
    }
}

impl<W: Weight> DiscreteDist<Point, W> {
    /// Probability of a region.
    pub fn prob_in(&self, region: &Region) -> Result<W> {
        let mut acc = W::zero();
        for (x, w) in &self.support {
            if region.contains(x)? {
                acc = acc + w.clone();
            }
        }
        Ok(acc)
    }
}

impl<W: Weight> DiscreteDist<u64, W> {
    /// Poisson(`rate`) truncated at the smallest `K` leaving tail mass below `eps`.
    ///
    /// Weights are `e^{-rate} rate^k / k!` for `k = 0..=K`, evaluated in log
    /// space; the tail is recorded as the defect and not renormalized.
    pub fn poisson_trunc(rate: f64, eps: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::invalid(format!(
                "Poisson rate must be positive, got {rate}"
            )));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::invalid(format!(
                "truncation level must lie in (0,1), got {eps}"
            )));
        }
        let ln_rate = rate.ln();
        let mut support = BTreeMap::new();
        let mut log_p = -rate;
        let mut cum = 0.0f64;
        let mut k = 0u64;
        loop {
            let p = log_p.exp();
            if p > 0.0 {
                support.insert(k, W::lossy(p));
                cum += p;
            }
            if 1.0 - cum < eps {
                break;
            }
            k += 1;
            guard(k as usize, "Poisson support")?;
            log_p += ln_rate - (k as f64).ln();
        }
        let mass = support.values().fold(W::zero(), |a, w: &W| a + w.clone());
        let defect = (W::one() - mass).clamp_nonneg();
        Ok(DiscreteDist { support, defect })
    }
}

pub(crate) fn accumulate<K: Ord, W: Weight>(map: &mut BTreeMap<K, W>, k: K, w: W) {
    match map.get_mut(&k) {
        Some(slot) => *slot = slot.clone() + w,
        None => {
            map.insert(k, w);
        }
    }
}

pub(crate) fn guard(len: usize, what: &'static str) -> Result<()> {
    if len > MAX_SUPPORT {
        Err(Error::ResourceLimit {
            what,
            limit: MAX_SUPPORT,
        })
    } else {
        Ok(())
    }
}

// Distributions are themselves values of distributions (the `GG` and `BG`
// layers of the law checks), so they need a total order. Weights are finite by
// construction, which makes `partial_cmp` total here.
impl<T: Ord, W: PartialOrd> PartialEq for DiscreteDist<T, W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Ord, W: PartialOrd> Eq for DiscreteDist<T, W> {}

impl<T: Ord, W: PartialOrd> PartialOrd for DiscreteDist<T, W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord, W: PartialOrd> Ord for DiscreteDist<T, W> {
    fn cmp(&self, other: &Self) -> Ordering {
        let wcmp = |a: &W, b: &W| a.partial_cmp(b).unwrap_or(Ordering::Equal);
        let mut a = self.support.iter();
        let mut b = other.support.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return wcmp(&self.defect, &other.defect),
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((xa, wa)), Some((xb, wb))) => {
                    let o = xa.cmp(xb).then_with(|| wcmp(wa, wb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}
