//! Intersection lattices: the numerical shadow of a surface.
//!
//! A surface is represented by the data every formula downstream actually
//! consumes: an integral lattice with a symmetric intersection form, the
//! canonical class, a polarization and chi of the structure sheaf. The rank
//! is arbitrary, so user-supplied lattices (del Pezzo, K3, ...) work the
//! same way as the builtins. Ampleness of the polarization is not decidable
//! from the matrix alone; the constructor only enforces the necessary
//! condition `H^2 > 0` and ampleness stays a user assertion.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Add;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::Error;

/// Integer divisor class: a coordinate vector in the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    coords: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass { coords }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass { coords: vec![0; rank] }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl From<&[i64]> for DivisorClass {
    fn from(coords: &[i64]) -> Self {
        DivisorClass::new(coords.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for DivisorClass {
    fn from(coords: [i64; N]) -> Self {
        DivisorClass::new(coords.to_vec())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "divisor classes of different rank");
        DivisorClass::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// Numerical data of a polarized surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceData {
    rank: usize,
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
    polarization: DivisorClass,
    chi_o: i64,
    name: Option<String>,
}

impl SurfaceData {
    /// Validates and assembles a surface: the matrix must be square and
    /// symmetric, the distinguished classes must have matching length and
    /// the polarization must satisfy `H^2 > 0`.
    pub fn new(
        gram: Vec<Vec<i64>>,
        canonical: DivisorClass,
        polarization: DivisorClass,
        chi_o: i64,
        name: Option<String>,
    ) -> Result<Self, Error> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::GramNotSymmetric);
        }
        for row in &gram {
            if row.len() != rank {
                return Err(Error::GramNotSymmetric);
            }
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, value) in row.iter().enumerate().take(i) {
                if *value != gram[j][i] {
                    return Err(Error::GramNotSymmetric);
                }
            }
        }
        if canonical.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: canonical.len() });
        }
        if polarization.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: polarization.len() });
        }
        let surface = SurfaceData { rank, gram, canonical, polarization, chi_o, name };
        let h2 = surface.h_squared()?;
        if h2 <= 0 {
            return Err(Error::NonPositivePolarization { h_squared: h2 });
        }
        Ok(surface)
    }

    /// The projective plane: rank-one lattice, `K = -3H`, `chi(O) = 1`.
    pub fn projective_plane() -> Self {
        SurfaceData {
            rank: 1,
            gram: vec![vec![1]],
            canonical: DivisorClass::from([-3]),
            polarization: DivisorClass::from([1]),
            chi_o: 1,
            name: Some("P2".to_string()),
        }
    }

    /// The Hirzebruch surface `F_e` in the basis (fiber, section):
    /// `f^2 = 0`, `f.s = 1`, `s^2 = -e`, `K = -(e+2)f - 2s`, default
    /// polarization `(e+1)f + s` (so `H^2 = e + 2 > 0`).
    pub fn hirzebruch(e: u32) -> Self {
        let e = i64::from(e);
        let name = if e == 0 { "P1xP1".to_string() } else { format!("Hirzebruch({e})") };
        SurfaceData {
            rank: 2,
            gram: vec![vec![0, 1], vec![1, -e]],
            canonical: DivisorClass::from([-(e + 2), -2]),
            // H^2 = e + 2 > 0; for e = 0 this is the (1,1) class
            polarization: DivisorClass::from([e + 1, 1]),
            chi_o: 1,
            name: Some(name),
        }
    }

    /// The smooth quadric `P1 x P1`, i.e. `F_0` with `H = (1,1)`.
    pub fn quadric() -> Self {
        Self::hirzebruch(0)
    }

    /// Resolves a builtin surface name: `P2`, `P1xP1` or `Hirzebruch(e)`
    /// with a nonnegative integer `e`.
    pub fn builtin(name: &str) -> Result<Self, Error> {
        match name {
            "P2" => Ok(Self::projective_plane()),
            "P1xP1" => Ok(Self::quadric()),
            _ => {
                if let Some(inner) = name
                    .strip_prefix("Hirzebruch(")
                    .and_then(|rest| rest.strip_suffix(')'))
                {
                    if let Ok(e) = inner.trim().parse::<u32>() {
                        return Ok(Self::hirzebruch(e));
                    }
                }
                Err(Error::UnknownSurface(name.to_string()))
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn polarization(&self) -> &DivisorClass {
        &self.polarization
    }

    pub fn chi_o(&self) -> i64 {
        self.chi_o
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// The intersection number `a . b = a^T G b`. Accumulated in arbitrary
    /// precision; only a final result outside `i64` is rejected.
    pub fn pairing(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64, Error> {
        if a.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: a.len() });
        }
        if b.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: b.len() });
        }
        let mut acc = BigInt::ZERO;
        for (i, ai) in a.coords.iter().enumerate() {
            for (j, bj) in b.coords.iter().enumerate() {
                acc += BigInt::from(*ai) * BigInt::from(self.gram[i][j]) * BigInt::from(*bj);
            }
        }
        acc.to_i64().ok_or(Error::Overflow)
    }

    pub fn self_intersection(&self, a: &DivisorClass) -> Result<i64, Error> {
        self.pairing(a, a)
    }

    pub fn h_squared(&self) -> Result<i64, Error> {
        self.self_intersection(&self.polarization)
    }

    pub fn canonical_dot_h(&self) -> Result<i64, Error> {
        self.pairing(&self.canonical, &self.polarization)
    }

    /// Structural check for the builtin projective plane (the lattice data,
    /// not the label, is compared).
    pub fn is_projective_plane(&self) -> bool {
        let p2 = Self::projective_plane();
        self.rank == p2.rank
            && self.gram == p2.gram
            && self.canonical == p2.canonical
            && self.polarization == p2.polarization
            && self.chi_o == p2.chi_o
    }
}
