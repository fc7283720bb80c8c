//! Finite abelian groups as products of cyclic groups, and their characters.
//!
//! The group operation is written additively on coordinate tuples: the
//! product `xy` of two elements is the componentwise sum reduced modulo the
//! cyclic orders. Elements are enumerated lexicographically with the last
//! coordinate varying fastest, so an element's position in that enumeration
//! is its mixed-radix value.
//!
//! Characters use the same tuple shape and the pairing
//! `eps(x) = exp(2 pi i sum_j eps_j x_j / m_j)`, which identifies the
//! character group with a copy of the group itself.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<usize>);

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

impl Character {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<usize>,
    #[serde(skip)]
    size: usize,
}

impl AbelianGroup {
    /// Product of cyclic groups of the given orders. The empty product is the
    /// trivial group.
    pub fn new(orders: &[usize]) -> Result<Self> {
        if let Some(pos) = orders.iter().position(|&m| m == 0) {
            return Err(Error::invalid(format!(
                "cyclic factor {pos} has order 0; orders must be >= 1"
            )));
        }
        let size = orders
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::invalid("group order overflows usize"))?;
        Ok(AbelianGroup {
            orders: orders.to_vec(),
            size,
        })
    }

    pub fn cyclic(order: usize) -> Result<Self> {
        Self::new(&[order])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// The character group, realized on the same coordinate tuples.
    pub fn dual_group(&self) -> AbelianGroup {
        self.clone()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    pub fn element(&self, index: usize) -> GroupElement {
        GroupElement(self.coords_of(index))
    }

    pub fn character(&self, index: usize) -> Character {
        Character(self.coords_of(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size).map(|i| self.element(i))
    }

    /// Position of an element in the lexicographic enumeration.
    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        self.check_shape(&x.0, "element")?;
        Ok(self.index_of_coords(&x.0))
    }

    pub fn character_index(&self, eps: &Character) -> Result<usize> {
        self.check_shape(&eps.0, "character")?;
        Ok(self.index_of_coords(&eps.0))
    }

    /// Reduces arbitrary integer coordinates into an element.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(shape_error("element", coords.len(), self.rank()));
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &m)| c.rem_euclid(m as i64) as usize)
                .collect(),
        ))
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_shape(&a.0, "element")?;
        self.check_shape(&b.0, "element")?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        ))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_shape(&a.0, "element")?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        ))
    }

    /// `eps(x)` under the exponential pairing.
    pub fn character_value(&self, eps: &Character, x: &GroupElement) -> Result<Complex64> {
        self.check_shape(&eps.0, "character")?;
        self.check_shape(&x.0, "element")?;
        Ok(self.pairing(&eps.0, &x.0))
    }

    /// `(a * b)` on enumeration indices.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        let mut stride = self.size;
        for &m in &self.orders {
            stride /= m;
            let x = (a / stride) % m;
            let y = (b / stride) % m;
            out += ((x + y) % m) * stride;
        }
        out
    }

    pub fn inv_index(&self, a: usize) -> usize {
        let mut out = 0;
        let mut stride = self.size;
        for &m in &self.orders {
            stride /= m;
            let x = (a / stride) % m;
            out += ((m - x) % m) * stride;
        }
        out
    }

    /// Row-major `|X| x |X|` table with entry `[eps][x] = eps(x)`.
    pub fn character_table(&self) -> Vec<Complex64> {
        let n = self.size;
        let coords: Vec<Vec<usize>> = (0..n).map(|i| self.coords_of(i)).collect();
        let mut table = Vec::with_capacity(n * n);
        for eps in &coords {
            for x in &coords {
                table.push(self.pairing(eps, x));
            }
        }
        table
    }

    fn pairing(&self, eps: &[usize], x: &[usize]) -> Complex64 {
        // Accumulate the phase as an exact fraction of a full turn per factor
        // before converting, so that the angle stays in [0, 1).
        let turns: f64 = eps
            .iter()
            .zip(x)
            .zip(&self.orders)
            .map(|((&e, &v), &m)| ((e * v) % m) as f64 / m as f64)
            .sum();
        Complex64::cis(TAU * turns.fract())
    }

    fn coords_of(&self, index: usize) -> Vec<usize> {
        assert!(index < self.size, "element index {index} out of range");
        let mut coords = vec![0; self.rank()];
        let mut rest = index;
        for (slot, &m) in coords.iter_mut().zip(&self.orders).rev() {
            *slot = rest % m;
            rest /= m;
        }
        coords
    }

    fn index_of_coords(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.orders)
            .fold(0, |acc, (&c, &m)| acc * m + c)
    }

    fn check_shape(&self, coords: &[usize], what: &str) -> Result<()> {
        if coords.len() != self.rank() {
            return Err(shape_error(what, coords.len(), self.rank()));
        }
        if let Some((j, (&c, &m))) = coords
            .iter()
            .zip(&self.orders)
            .enumerate()
            .find(|(_, (&c, &m))| c >= m)
        {
            return Err(Error::invalid(format!(
                "{what} coordinate {j} is {c}, must be below {m}"
            )));
        }
        Ok(())
    }
}

fn shape_error(what: &str, got: usize, want: usize) -> Error {
    Error::invalid(format!(
        "{what} has {got} coordinates, group has {want} factors"
    ))
}
