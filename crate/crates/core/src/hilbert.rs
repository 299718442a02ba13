//! Particle Hilbert spaces and the labelled operators that live on them.
//!
//! A single particle carries a spin-1/2 factor (dim 2) and a spatial mode
//! factor (dim 3, basis Here/There/Yonder). Within a particle the spin index
//! varies slower than the mode index, so the single-particle basis index is
//! `2 * 0 + mode` for spin up and `3 + mode` for spin down. Particle 1 is the
//! slowest digit of the multi-particle index.
//!
//! The three spatial modes stand in for wavefunctions with disjoint compact
//! support; the only property used is their mutual orthogonality.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{pauli, tensor, tensor_all, Operator, StateVector, ZERO};

pub const SPIN_DIM: usize = 2;
pub const MODE_DIM: usize = 3;
pub const PARTICLE_DIM: usize = SPIN_DIM * MODE_DIM;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> Operator {
        match self {
            Pauli::I => pauli::identity(),
            Pauli::X => pauli::x(),
            Pauli::Y => pauli::y(),
            Pauli::Z => pauli::z(),
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Spatial part of a single-particle factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spatial {
    /// Identity on the mode factor.
    Any,
    Here,
    There,
    Yonder,
}

impl Spatial {
    pub const REGIONS: [Spatial; 3] = [Spatial::Here, Spatial::There, Spatial::Yonder];

    /// Mode basis index, `None` for `Any`.
    pub fn mode_index(self) -> Option<usize> {
        match self {
            Spatial::Any => None,
            Spatial::Here => Some(0),
            Spatial::There => Some(1),
            Spatial::Yonder => Some(2),
        }
    }

    pub fn matrix(self) -> Operator {
        match self.mode_index() {
            None => Operator::identity(MODE_DIM),
            Some(i) => Operator::basis_projector(MODE_DIM, i),
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Spatial::Any => "",
            Spatial::Here => "_h",
            Spatial::There => "_t",
            Spatial::Yonder => "_y",
        }
    }
}

/// One particle's factor: a Pauli matrix on the spin, optionally restricted
/// to a region by a mode projector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorSpec {
    pub pauli: Pauli,
    pub spatial: Spatial,
}

impl FactorSpec {
    pub const fn new(pauli: Pauli, spatial: Spatial) -> Self {
        Self { pauli, spatial }
    }

    pub const fn spin(pauli: Pauli) -> Self {
        Self::new(pauli, Spatial::Any)
    }

    /// Single-particle matrix on the full (spin x mode) space.
    pub fn full_matrix(self) -> Operator {
        tensor(&self.pauli.matrix(), &self.spatial.matrix())
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.pauli.symbol(), self.spatial.suffix())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("labels need 2 or 3 particle factors, got {0}")]
    ParticleCount(usize),
    #[error("spin-only label carries a spatial restriction on particle {0}")]
    SpatialOnSpinOnly(usize),
    #[error("invalid Pauli symbol {0:?}")]
    BadPauli(char),
}

/// Symbolic multi-particle operator: a tensor product of per-particle factors
/// on either the spin-only space or the full spin x mode space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObservableLabel {
    factors: Vec<FactorSpec>,
    spin_only: bool,
}

impl ObservableLabel {
    pub fn new(factors: Vec<FactorSpec>, spin_only: bool) -> Result<Self, LabelError> {
        if !(2..=3).contains(&factors.len()) {
            return Err(LabelError::ParticleCount(factors.len()));
        }
        if spin_only {
            if let Some(k) = factors.iter().position(|f| f.spatial != Spatial::Any) {
                return Err(LabelError::SpatialOnSpinOnly(k + 1));
            }
        }
        Ok(Self { factors, spin_only })
    }

    /// Spin-only label from a Pauli string such as `"XYY"` or `"IX"`.
    pub fn spin(paulis: &str) -> Result<Self, LabelError> {
        let factors = paulis
            .chars()
            .map(|c| Pauli::from_char(c).map(FactorSpec::spin).ok_or(LabelError::BadPauli(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(factors, true)
    }

    /// Full-space label.
    pub fn full(factors: &[(Pauli, Spatial)]) -> Result<Self, LabelError> {
        Self::new(
            factors.iter().map(|&(p, s)| FactorSpec::new(p, s)).collect(),
            false,
        )
    }

    /// Same Pauli string lifted to the full space with no spatial restriction.
    pub fn lifted(&self) -> Self {
        Self {
            factors: self.factors.iter().map(|f| FactorSpec::spin(f.pauli)).collect(),
            spin_only: false,
        }
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn particles(&self) -> usize {
        self.factors.len()
    }

    pub fn is_spin_only(&self) -> bool {
        self.spin_only
    }

    pub fn dim(&self) -> usize {
        space_dim(self.particles(), self.spin_only)
    }

    /// The label with factor `i` moved to position `p(i)`.
    pub fn permuted(&self, p: &Permutation) -> Self {
        assert_eq!(p.len(), self.particles(), "permutation size mismatch");
        let mut factors = self.factors.clone();
        for (i, &f) in self.factors.iter().enumerate() {
            factors[p.image(i)] = f;
        }
        Self {
            factors,
            spin_only: self.spin_only,
        }
    }
}

impl fmt::Display for ObservableLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let any_spatial = self.factors.iter().any(|x| x.spatial != Spatial::Any);
        for (k, factor) in self.factors.iter().enumerate() {
            if any_spatial && k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

pub fn space_dim(particles: usize, spin_only: bool) -> usize {
    let local = if spin_only { SPIN_DIM } else { PARTICLE_DIM };
    local.pow(particles as u32)
}

/// Tensor product over particles of `pauli (x) projector-or-identity`.
pub fn build_operator(label: &ObservableLabel) -> Operator {
    let locals: Vec<Operator> = label
        .factors
        .iter()
        .map(|f| {
            if label.spin_only {
                f.pauli.matrix()
            } else {
                f.full_matrix()
            }
        })
        .collect();
    tensor_all(&locals)
}

/// A permutation of particle positions, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
    parity: i8,
}

impl Permutation {
    /// Fails unless `image` is a bijection on `0..image.len()`.
    pub fn new(image: Vec<usize>) -> Option<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        let parity = parity_of(&image);
        Some(Self { image, parity })
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect()).unwrap()
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Self::new(image).expect("transposition indices in range")
    }

    /// All `n!` permutations in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation::new(prefix.clone()).unwrap());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// +1 for even, -1 for odd permutations.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self::new(other.image.iter().map(|&i| self.image[i]).collect()).unwrap()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Self::new(inv).unwrap()
    }
}

/// Parity by cycle decomposition: a k-cycle is k-1 transpositions.
fn parity_of(image: &[usize]) -> i8 {
    let mut visited = vec![false; image.len()];
    let mut transpositions = 0;
    for start in 0..image.len() {
        let mut len = 0;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = image[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn digits(mut index: usize, base: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for d in out.iter_mut().rev() {
        *d = index % base;
        index /= base;
    }
    out
}

fn undigits(ds: &[usize], base: usize) -> usize {
    ds.iter().fold(0, |acc, &d| acc * base + d)
}

/// Unitary sending `|i_0 ... i_{n-1}>` to the state whose digit at position
/// `p(k)` is `i_k`, for `n` factors of dimension `local_dim`.
pub fn factor_permutation(p: &Permutation, local_dim: usize) -> Operator {
    let n = p.len();
    let dim = local_dim.pow(n as u32);
    let image: Vec<usize> = (0..dim)
        .map(|idx| {
            let src = digits(idx, local_dim, n);
            let mut dst = vec![0; n];
            for (k, &d) in src.iter().enumerate() {
                dst[p.image(k)] = d;
            }
            undigits(&dst, local_dim)
        })
        .collect();
    Operator::from_basis_map(&image)
}

/// Permutes whole particles (spin and mode together, or spin alone).
pub fn permutation_operator(p: &Permutation, spin_only: bool) -> Operator {
    factor_permutation(p, if spin_only { SPIN_DIM } else { PARTICLE_DIM })
}

/// Permutes only the mode factors of the full space, leaving spins in place.
pub fn spatial_permutation_operator(p: &Permutation) -> Operator {
    let n = p.len();
    let dim = space_dim(n, false);
    let image: Vec<usize> = (0..dim)
        .map(|idx| {
            let (spins, modes) = split_index(idx, n);
            let mut new_modes = vec![0; n];
            for (k, &m) in modes.iter().enumerate() {
                new_modes[p.image(k)] = m;
            }
            join_index(&spins, &new_modes)
        })
        .collect();
    Operator::from_basis_map(&image)
}

/// Splits a full-space index into per-particle spin and mode digits.
pub fn split_index(index: usize, particles: usize) -> (Vec<usize>, Vec<usize>) {
    digits(index, PARTICLE_DIM, particles)
        .into_iter()
        .map(|d| (d / MODE_DIM, d % MODE_DIM))
        .unzip()
}

pub fn join_index(spins: &[usize], modes: &[usize]) -> usize {
    let ds: Vec<usize> = spins
        .iter()
        .zip(modes)
        .map(|(&s, &m)| s * MODE_DIM + m)
        .collect();
    undigits(&ds, PARTICLE_DIM)
}

/// Full-space state `spin (x) spatial`, reordered to the per-particle
/// interleaved basis. Both inputs must describe the same particle count.
pub fn spin_spatial_product(spin: &StateVector, spatial: &StateVector) -> StateVector {
    let n = (spin.dim() as f64).log2().round() as usize;
    assert_eq!(spin.dim(), SPIN_DIM.pow(n as u32), "spin dim must be 2^n");
    assert_eq!(spatial.dim(), MODE_DIM.pow(n as u32), "spatial dim must be 3^n");
    let dim = space_dim(n, false);
    let mut amplitudes = vec![ZERO; dim];
    for (idx, amp) in amplitudes.iter_mut().enumerate() {
        let (spins, modes) = split_index(idx, n);
        *amp = spin.amplitude(undigits(&spins, SPIN_DIM)) * spatial.amplitude(undigits(&modes, MODE_DIM));
    }
    StateVector::normalized(amplitudes).expect("product of unit vectors is nonzero")
}

/// Spatial basis state `|r_1, ..., r_n>` on the mode space (dim 3^n).
pub fn region_state(regions: &[Spatial]) -> StateVector {
    let modes: Vec<usize> = regions
        .iter()
        .map(|r| r.mode_index().expect("region state needs concrete regions"))
        .collect();
    StateVector::basis(MODE_DIM.pow(regions.len() as u32), undigits(&modes, MODE_DIM))
}

/// Spin basis state from `true` = up, `false` = down.
pub fn spin_state(ups: &[bool]) -> StateVector {
    let ds: Vec<usize> = ups.iter().map(|&u| usize::from(!u)).collect();
    StateVector::basis(SPIN_DIM.pow(ups.len() as u32), undigits(&ds, SPIN_DIM))
}

/// Sum of `coeff * state` as a raw amplitude vector.
pub fn superpose(terms: &[(Complex64, &StateVector)]) -> Vec<Complex64> {
    let dim = terms.first().map_or(0, |(_, v)| v.dim());
    let mut out = vec![ZERO; dim];
    for (c, v) in terms {
        assert_eq!(v.dim(), dim);
        for (o, a) in out.iter_mut().zip(v.amplitudes()) {
            *o += c * a;
        }
    }
    out
}
