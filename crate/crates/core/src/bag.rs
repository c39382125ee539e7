//! Finite bags (multisets) and the bag monad on sets.
//!
//! A [`Bag`] is stored as a sorted vector, so two bags are equal exactly when
//! their element sequences are equal. Multiplicity is carried by repetition.

use std::fmt;
use std::io::{self, Write};

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::region::Region;
use crate::space::Point;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bag<T> {
    elems: Vec<T>,
}

/// A bag of bags of points.
pub type BagOfBags = Bag<Bag<Point>>;

impl<T: Ord> Bag<T> {
    pub fn empty() -> Self {
        Bag { elems: Vec::new() }
    }

    /// The singleton bag `[x]`.
    pub fn unit(x: T) -> Self {
        Bag { elems: vec![x] }
    }

    /// Forgets the order of a tuple.
    pub fn from_tuple(xs: impl IntoIterator<Item = T>) -> Self {
        let mut elems: Vec<T> = xs.into_iter().collect();
        elems.sort();
        Bag { elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<T> {
        self.elems
    }

    pub fn multiplicity(&self, x: &T) -> usize {
        let lo = self.elems.partition_point(|e| e < x);
        let hi = self.elems.partition_point(|e| e <= x);
        hi - lo
    }

    /// Applies `f` to every element.
    pub fn map<U: Ord>(&self, f: impl FnMut(&T) -> U) -> Bag<U> {
        Bag::from_tuple(self.elems.iter().map(f))
    }

    /// Multiplicity-respecting union of two bags.
    pub fn sum(&self, other: &Bag<T>) -> Bag<T>
    where
        T: Clone,
    {
        let mut elems = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.elems.len() && j < other.elems.len() {
            if self.elems[i] <= other.elems[j] {
                elems.push(self.elems[i].clone());
                i += 1;
            } else {
                elems.push(other.elems[j].clone());
                j += 1;
            }
        }
        elems.extend_from_slice(&self.elems[i..]);
        elems.extend_from_slice(&other.elems[j..]);
        Bag { elems }
    }

    pub fn count_where(&self, mut pred: impl FnMut(&T) -> bool) -> usize {
        self.elems.iter().filter(|x| pred(x)).count()
    }
}

impl<T: Ord + Clone> Bag<Bag<T>> {
    /// Union of all inner bags.
    pub fn union(&self) -> Bag<T> {
        Bag::from_tuple(self.elems.iter().flat_map(|b| b.elems.iter().cloned()))
    }
}

impl<T: Ord> FromIterator<T> for Bag<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Bag::from_tuple(iter)
    }
}

impl<'a, T> IntoIterator for &'a Bag<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

impl Bag<Point> {
    /// Number of elements, with multiplicity, lying in `region`.
    pub fn count_in(&self, region: &Region) -> Result<usize> {
        let mut n = 0;
        for p in &self.elems {
            if region.contains(p)? {
                n += 1;
            }
        }
        Ok(n)
    }

    /// One point per row: `star`, `x`, or `x,y`.
    pub fn write_csv(&self, mut w: impl Write) -> io::Result<()> {
        for p in &self.elems {
            writeln!(w, "{}", p.csv_fields())?;
        }
        Ok(())
    }
}

impl Bag<Bag<Point>> {
    /// Per-inner-bag counts in `region`, sorted descending.
    ///
    /// Two bags of bags with the same composition lie in the same cell of the
    /// decomposition of the union-preimage of "k points in the region".
    pub fn composition_in(&self, region: &Region) -> Result<Vec<usize>> {
        let mut counts = self
            .elems
            .iter()
            .map(|b| b.count_in(region))
            .collect::<Result<Vec<_>>>()?;
        counts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(counts)
    }
}

impl<T: fmt::Display> fmt::Display for Bag<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl<T: Serialize> Serialize for Bag<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems.serialize(s)
    }
}
