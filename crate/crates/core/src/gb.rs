//! Exact distributions over bags: the composite monad on countable carriers.
//!
//! A [`BagDist`] is an ordinary [`DiscreteDist`] whose values are canonical
//! bags. Binding enumerates every joint outcome of the per-point processes and
//! unions the resulting bags.

use std::collections::BTreeMap;

use crate::bag::Bag;
use crate::dist::DiscreteDist;
use crate::error::Result;
use crate::region::Region;
use crate::scalar::Weight;
use crate::space::Point;

pub type BagDist<T = Point, W = f64> = DiscreteDist<Bag<T>, W>;

/// The deterministic process `[x]`.
pub fn unit<T: Ord + Clone, W: Weight>(x: T) -> BagDist<T, W> {
    DiscreteDist::point(Bag::unit(x))
}

/// Distribution of the union of two independent bags.
pub fn convolve<T: Ord + Clone, W: Weight>(
    a: &BagDist<T, W>,
    b: &BagDist<T, W>,
) -> Result<BagDist<T, W>> {
    a.bind(|x| b.map(|y| x.sum(y)))
}

/// Kleisli extension: sample a bag from `alpha`, run `f` independently at each
/// point and union the results.
pub fn bind<T, U, W>(
    alpha: &BagDist<T, W>,
    mut f: impl FnMut(&T) -> Result<BagDist<U, W>>,
) -> Result<BagDist<U, W>>
where
    T: Ord + Clone,
    U: Ord + Clone,
    W: Weight,
{
    let mut cache: BTreeMap<T, BagDist<U, W>> = BTreeMap::new();
    alpha.try_bind(|bag| {
        let mut acc = DiscreteDist::point(Bag::empty());
        for x in bag {
            if !cache.contains_key(x) {
                cache.insert(x.clone(), f(x)?);
            }
            acc = convolve(&acc, &cache[x])?;
        }
        Ok(acc)
    })
}

/// `α(A^U_k)`: probability of exactly `k` points in `region`.
pub fn prob_count<W: Weight>(alpha: &BagDist<Point, W>, region: &Region, k: usize) -> Result<W> {
    let mut acc = W::zero();
    for (bag, w) in alpha.iter() {
        if bag.count_in(region)? == k {
            acc = acc + w.clone();
        }
    }
    Ok(acc)
}

/// Law of the count in `region`.
pub fn count_dist<W: Weight>(
    alpha: &BagDist<Point, W>,
    region: &Region,
) -> Result<DiscreteDist<u64, W>> {
    let mut counts = BTreeMap::new();
    for (bag, w) in alpha.iter() {
        crate::dist::accumulate(&mut counts, bag.count_in(region)? as u64, w.clone());
    }
    Ok(DiscreteDist::from_parts(counts, alpha.defect().clone()))
}

/// The distributive law on a bag of distributions `[ν₁..νₙ]`: sample each
/// `νᵢ` independently and forget the order.
pub fn distributive_law<T: Ord + Clone, W: Weight>(
    nus: &[DiscreteDist<T, W>],
) -> Result<BagDist<T, W>> {
    Ok(DiscreteDist::product(nus)?.map(|t| Bag::from_tuple(t.iter().cloned())))
}

/// Coefficient of `x^k` in `Π (νᵢ(Ū) + νᵢ(U)·x)`.
pub fn poly_coeff_check<W: Weight>(
    nus: &[DiscreteDist<Point, W>],
    region: &Region,
    k: usize,
) -> Result<W> {
    let outside = region.complement();
    let mut coeffs = vec![W::one()];
    for nu in nus {
        let p = nu.prob_in(region)?;
        let q = nu.prob_in(&outside)?;
        let mut next = vec![W::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] = next[i].clone() + c.clone() * q.clone();
            next[i + 1] = next[i + 1].clone() + c.clone() * p.clone();
        }
        coeffs = next;
    }
    Ok(coeffs.get(k).cloned().unwrap_or_else(W::zero))
}

/// Multiplication of the composite monad, `GBGB → GGBB → GBB → GB`: apply
/// the law inside, flatten the outer `G` (one Kleisli step), then union.
pub fn join<T: Ord + Clone, W: Weight>(
    nested: &DiscreteDist<Bag<BagDist<T, W>>, W>,
) -> Result<BagDist<T, W>> {
    let gbb = nested.try_bind(|b| distributive_law(b.as_slice()))?;
    Ok(gbb.map(Bag::union))
}
