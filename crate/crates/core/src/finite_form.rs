//! Finite quadratic modules: discriminant groups `A_L = L^∨/L` with their
//! bilinear form `b_L` (values in `Q/Z`) and quadratic form `q_L` (values in
//! `Q/2Z`), isometries between them, and the anti-isometry `γ` between the
//! discriminant forms of a primitive sublattice of a unimodular lattice and
//! of its orthogonal complement.
//!
//! Elements are coordinate vectors with respect to the module's generators
//! `g₁, …, g_k`, where `gᵢ` has order `dᵢ` and `d₁ | d₂ | … | d_k`. A map
//! between modules is stored by the images of the generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{mod_one, mod_two, Rational};
use crate::error::{Error, Result};
use crate::json::{JsonInt, JsonRational};
use crate::lattice::{Lattice, SublatticeEmbedding};
use crate::matrix::{primitive_left_inverse, smith_normal_form, IntMatrix};

/// Default cap on the order of modules handed to exhaustive searches.
pub const DEFAULT_ORDER_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadraticModule {
    factors: Vec<BigInt>,
    generators: Vec<Vec<Rational>>,
    q: Vec<Rational>,
    b: Vec<Vec<Rational>>,
}

impl FiniteQuadraticModule {
    /// Validates and canonicalizes a module given by invariant factors and
    /// the values `q(gᵢ)` and `b(gᵢ, gⱼ)` on generators.
    pub fn new(factors: Vec<BigInt>, q: Vec<Rational>, b: Vec<Vec<Rational>>) -> Result<Self> {
        let k = factors.len();
        if factors.iter().any(|d| d <= &BigInt::one()) {
            return Err(Error::InvalidArgument("invariant factors must exceed 1".into()));
        }
        if factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidArgument("invariant factors must form a divisor chain".into()));
        }
        if q.len() != k || b.len() != k || b.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: q.len(),
            });
        }
        let q: Vec<Rational> = q.iter().map(mod_two).collect();
        let b: Vec<Vec<Rational>> = b.iter().map(|r| r.iter().map(mod_one).collect()).collect();
        for i in 0..k {
            let d = Rational::from_integer(factors[i].clone());
            if mod_one(&q[i]) != b[i][i] {
                return Err(Error::InvalidArgument(format!("b(g{i},g{i}) is not q(g{i}) mod 1")));
            }
            if !mod_two(&(&d * &d * &q[i])).is_zero() {
                return Err(Error::InvalidArgument(format!("q is not well defined on g{i}")));
            }
            for j in 0..k {
                if b[i][j] != b[j][i] {
                    return Err(Error::InvalidArgument("b is not symmetric".into()));
                }
                if !mod_one(&(&d * &b[i][j])).is_zero() {
                    return Err(Error::InvalidArgument(format!("b is not well defined on g{i}")));
                }
            }
        }
        Ok(FiniteQuadraticModule {
            factors,
            generators: Vec::new(),
            q,
            b,
        })
    }

    pub fn trivial() -> Self {
        FiniteQuadraticModule {
            factors: Vec::new(),
            generators: Vec::new(),
            q: Vec::new(),
            b: Vec::new(),
        }
    }

    /// `Z/m` with `q(g) = q`.
    pub fn cyclic(order: impl Into<BigInt>, q: Rational) -> Result<Self> {
        let order = order.into();
        if order.is_one() {
            return Ok(Self::trivial());
        }
        let b = mod_one(&q);
        Self::new(vec![order], vec![q], vec![vec![b]])
    }

    /// Attaches representatives of the generators in `L ⊗ Q`.
    pub fn with_generators(mut self, generators: Vec<Vec<Rational>>) -> Self {
        assert_eq!(generators.len(), self.factors.len());
        self.generators = generators;
        self
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Generator representatives in `L ⊗ Q`; empty for abstract modules.
    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn q_values(&self) -> &[Rational] {
        &self.q
    }

    pub fn b_values(&self) -> &[Vec<Rational>] {
        &self.b
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Minimal number of generators.
    pub fn ell(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        x.iter().zip(&self.factors).map(|(c, d)| c.mod_floor(d)).collect()
    }

    /// `q(Σ cᵢ gᵢ)` in `[0, 2)`.
    pub fn q_of(&self, c: &[BigInt]) -> Rational {
        let k = self.factors.len();
        let mut acc = Rational::zero();
        for i in 0..k {
            let ci = Rational::from_integer(c[i].clone());
            acc += &ci * &ci * &self.q[i];
            for j in i + 1..k {
                let cj = Rational::from_integer(c[j].clone());
                acc += Rational::from_integer(BigInt::from(2)) * &ci * cj * &self.b[i][j];
            }
        }
        mod_two(&acc)
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b_of(&self, x: &[BigInt], y: &[BigInt]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += Rational::from_integer(xi * yj) * &self.b[i][j];
            }
        }
        mod_one(&acc)
    }

    pub fn element_order(&self, c: &[BigInt]) -> BigInt {
        c.iter()
            .zip(&self.factors)
            .fold(BigInt::one(), |acc, (ci, d)| acc.lcm(&(d / ci.gcd(d))))
    }

    pub fn identity_map(&self) -> ModuleIsometry {
        self.scalar_map(&BigInt::one())
    }

    /// Multiplication by `α`.
    pub fn scalar_map(&self, alpha: &BigInt) -> ModuleIsometry {
        let k = self.factors.len();
        let images = (0..k)
            .map(|j| {
                let mut col = vec![BigInt::zero(); k];
                col[j] = alpha.mod_floor(&self.factors[j]);
                col
            })
            .collect();
        ModuleIsometry { images }
    }

    /// Image of an element under a map whose target is `self`.
    pub fn apply(&self, f: &ModuleIsometry, x: &[BigInt]) -> Vec<BigInt> {
        let k = self.factors.len();
        let mut out = vec![BigInt::zero(); k];
        for (xj, col) in x.iter().zip(&f.images) {
            for (o, c) in out.iter_mut().zip(col) {
                *o += xj * c;
            }
        }
        self.reduce(&out)
    }

    /// `f ∘ g` for endomorphisms of `self`.
    pub fn compose(&self, f: &ModuleIsometry, g: &ModuleIsometry) -> ModuleIsometry {
        ModuleIsometry {
            images: g.images.iter().map(|col| self.apply(f, col)).collect(),
        }
    }

    /// Whether `f: self → target` is a group isomorphism scaling both forms by
    /// `sign` (`+1` for isometries, `−1` for anti-isometries).
    pub fn check_map(&self, target: &FiniteQuadraticModule, f: &ModuleIsometry, sign: i64) -> bool {
        let k = self.factors.len();
        if f.images.len() != k || self.factors != target.factors {
            return false;
        }
        if f.images.iter().any(|c| c.len() != target.factors.len()) {
            return false;
        }
        let s = Rational::from_integer(BigInt::from(sign));
        for i in 0..k {
            if target.element_order(&f.images[i]) != self.factors[i] {
                return false;
            }
            if target.q_of(&f.images[i]) != mod_two(&(&s * &self.q[i])) {
                return false;
            }
            for j in 0..k {
                if target.b_of(&f.images[i], &f.images[j]) != mod_one(&(&s * &self.b[i][j])) {
                    return false;
                }
            }
        }
        is_surjective(&f.images, &target.factors)
    }

    pub fn is_automorphism(&self, f: &ModuleIsometry) -> bool {
        self.check_map(self, f, 1)
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            factors: self.factors.iter().cloned().map(JsonInt).collect(),
            q: self.q.iter().cloned().map(JsonRational).collect(),
            b: self
                .b
                .iter()
                .map(|r| r.iter().cloned().map(JsonRational).collect())
                .collect(),
        }
    }

    pub fn from_json(j: ModuleJson) -> Result<Self> {
        Self::new(
            j.factors.into_iter().map(|x| x.0).collect(),
            j.q.into_iter().map(|x| x.0).collect(),
            j.b.into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect(),
        )
    }
}

/// `{ "factors": [...], "q": ["a/b", ...], "b": [["a/b", ...], ...] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub factors: Vec<JsonInt>,
    pub q: Vec<JsonRational>,
    pub b: Vec<Vec<JsonRational>>,
}

impl Serialize for FiniteQuadraticModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// A homomorphism between finite modules, stored as the coordinate vectors of
/// the images of the source generators. Ordering is lexicographic in those
/// images, generator by generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleIsometry {
    images: Vec<Vec<BigInt>>,
}

impl ModuleIsometry {
    pub fn from_images(images: Vec<Vec<BigInt>>) -> Self {
        ModuleIsometry { images }
    }

    pub fn images(&self) -> &[Vec<BigInt>] {
        &self.images
    }

    /// Matrix whose column `j` is the image of generator `j`.
    pub fn matrix(&self) -> IntMatrix {
        if self.images.is_empty() {
            return IntMatrix::zeros(0, 0);
        }
        IntMatrix::from_columns(&self.images).expect("images share a length")
    }
}

impl Serialize for ModuleIsometry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::json::matrix_to_json(&self.matrix()).serialize(s)
    }
}

/// Surjectivity of the map `Zᵏ → ⊕ Z/dᵢ` given by `images`: the images
/// together with the relations `dᵢ eᵢ` must generate `Zᵏ`.
fn is_surjective(images: &[Vec<BigInt>], factors: &[BigInt]) -> bool {
    let k = factors.len();
    if k == 0 {
        return true;
    }
    let mut relations = IntMatrix::zeros(k, k);
    for (i, d) in factors.iter().enumerate() {
        relations[(i, i)] = d.clone();
    }
    let m = IntMatrix::from_columns(images)
        .expect("images share a length")
        .hstack(&relations);
    smith_normal_form(&m).diagonal().iter().all(One::is_one)
}

/// The discriminant group of a lattice with the data that maps dual vectors
/// (given as integer functionals `y = G x`) to module coordinates and back.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    factors: Vec<BigInt>,
    generators: Vec<Vec<Rational>>,
    raw_squares: Vec<Rational>,
    b: Vec<Vec<Rational>>,
    even: bool,
    reduce: IntMatrix,
    lift: IntMatrix,
}

impl DiscriminantGroup {
    /// From the Smith form `U G V = D`: the generator for factor `dᵢ` is
    /// `V eᵢ / dᵢ`, and a functional `y` has coordinates `(U y)ᵢ mod dᵢ`.
    pub fn of(lattice: &Lattice) -> Self {
        let g = lattice.gram();
        let n = lattice.rank();
        let snf = smith_normal_form(g);
        let diag = snf.diagonal();
        let keep: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
        let factors: Vec<BigInt> = keep.iter().map(|&i| diag[i].clone()).collect();
        let generators: Vec<Vec<Rational>> = keep
            .iter()
            .map(|&i| {
                (0..n)
                    .map(|r| Rational::new(snf.v[(r, i)].clone(), diag[i].clone()))
                    .collect()
            })
            .collect();
        let pair = |x: &[Rational], y: &[Rational]| -> Rational {
            let mut acc = Rational::zero();
            for (r, xr) in x.iter().enumerate() {
                for (c, yc) in y.iter().enumerate() {
                    acc += xr * yc * Rational::from_integer(g[(r, c)].clone());
                }
            }
            acc
        };
        let raw_squares = generators.iter().map(|x| pair(x, x)).collect();
        let b = generators
            .iter()
            .map(|x| generators.iter().map(|y| mod_one(&pair(x, y))).collect())
            .collect();
        DiscriminantGroup {
            factors,
            generators,
            raw_squares,
            b,
            even: lattice.is_even(),
            reduce: snf.u.select_rows(keep.iter().copied()),
            lift: snf.u_inv.select_columns(keep.iter().copied()),
        }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn b_values(&self) -> &[Vec<Rational>] {
        &self.b
    }

    /// The quadratic module; requires an even lattice.
    pub fn module(&self) -> Result<FiniteQuadraticModule> {
        if !self.even {
            return Err(Error::OddLatticeNoQ);
        }
        let m = FiniteQuadraticModule::new(self.factors.clone(), self.raw_squares.clone(), self.b.clone())?;
        Ok(m.with_generators(self.generators.clone()))
    }

    /// Module coordinates of the dual vector `G⁻¹ y`.
    pub fn coordinates_of_functional(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.reduce
            .mul_vec(y)
            .iter()
            .zip(&self.factors)
            .map(|(c, d)| c.mod_floor(d))
            .collect()
    }

    /// An integer functional representing the element with coordinates `c`.
    pub fn functional_of(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.lift.mul_vec(c)
    }

    /// The automorphism of `A_L` induced by an isometry `B` of `L`
    /// (`Bᵀ G B = G`): functionals transform by `B⁻ᵀ`.
    pub fn induced_map(&self, b: &IntMatrix) -> Result<ModuleIsometry> {
        let b_inv_t = primitive_left_inverse(b)?.transpose();
        let k = self.factors.len();
        let images = (0..k)
            .map(|i| {
                let mut e = vec![BigInt::zero(); k];
                e[i] = BigInt::one();
                let y = self.functional_of(&e);
                self.coordinates_of_functional(&b_inv_t.mul_vec(&y))
            })
            .collect();
        Ok(ModuleIsometry { images })
    }
}

/// `(A_L, q_L, b_L)` for an even lattice.
pub fn discriminant_module(lattice: &Lattice) -> Result<FiniteQuadraticModule> {
    DiscriminantGroup::of(lattice).module()
}

/// Fixed-denominator integer encoding of a module for exhaustive searches.
struct Compact {
    factors: Vec<u64>,
    // q·den mod 2·den and b·den mod den
    q: Vec<u128>,
    b: Vec<Vec<u128>>,
    den: u128,
}

impl Compact {
    fn new(m: &FiniteQuadraticModule, den: u64) -> Result<Self> {
        let den_r = Rational::from_integer(BigInt::from(den));
        let enc = |x: &Rational| -> Result<u128> {
            let y = x * &den_r;
            if !y.is_integer() {
                return Err(Error::VerificationFailed("denominator does not divide".into()));
            }
            y.to_integer()
                .to_u128()
                .ok_or_else(|| Error::Overflow("form value".into()))
        };
        Ok(Compact {
            factors: m
                .factors
                .iter()
                .map(|d| crate::arith::to_u64(d, "invariant factor"))
                .collect::<Result<_>>()?,
            q: m.q.iter().map(enc).collect::<Result<_>>()?,
            b: m.b
                .iter()
                .map(|r| r.iter().map(enc).collect::<Result<_>>())
                .collect::<Result<_>>()?,
            den: den as u128,
        })
    }

    fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Mixed-radix decoding, first coordinate most significant, so increasing
    /// indices enumerate elements in lexicographic order.
    fn decode(&self, mut idx: u64) -> Vec<u64> {
        let mut c = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            c[i] = idx % self.factors[i];
            idx /= self.factors[i];
        }
        c
    }

    fn q(&self, c: &[u64]) -> u128 {
        let m = 2 * self.den;
        let mut acc = 0u128;
        for i in 0..c.len() {
            let ci = c[i] as u128;
            acc = (acc + (ci * ci % m) * self.q[i]) % m;
            for j in i + 1..c.len() {
                acc = (acc + 2 * ((ci * c[j] as u128) % m) * self.b[i][j]) % m;
            }
        }
        acc
    }

    fn b(&self, x: &[u64], y: &[u64]) -> u128 {
        let mut acc = 0u128;
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                acc = (acc + ((xi as u128 * yj as u128) % self.den) * self.b[i][j]) % self.den;
            }
        }
        acc
    }

    fn element_order(&self, c: &[u64]) -> u64 {
        c.iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&ci, &d)| acc.lcm(&(d / ci.gcd(&d))))
    }
}

fn common_denominator(mods: &[&FiniteQuadraticModule]) -> Result<u64> {
    let mut den = BigInt::one();
    for m in mods {
        for x in m.q.iter().chain(m.b.iter().flatten()) {
            den = den.lcm(x.denom());
        }
    }
    crate::arith::to_u64(&den, "form denominator")
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Want {
    First,
    All,
}

/// Exhaustive search for isometries `src → dst`, in lexicographic order of
/// the generator images.
fn search_isometries(
    src: &FiniteQuadraticModule,
    dst: &FiniteQuadraticModule,
    bound: u64,
    want: Want,
) -> Result<Vec<ModuleIsometry>> {
    if src.factors != dst.factors {
        return Ok(Vec::new());
    }
    let order = dst.order();
    if order > BigInt::from(bound) {
        return Err(Error::SearchSpaceTooLarge {
            order: order.to_string(),
            bound,
        });
    }
    if src.is_trivial() {
        return Ok(vec![ModuleIsometry { images: Vec::new() }]);
    }
    let den = common_denominator(&[src, dst])?;
    let s = Compact::new(src, den)?;
    let t = Compact::new(dst, den)?;
    let to_images = |cols: &[Vec<u64>]| ModuleIsometry {
        images: cols
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    };

    if s.factors.len() == 1 {
        // Z/m: images α·g with α a unit and α² q_dst ≡ q_src.
        let m = s.factors[0];
        let modulus = 2 * t.den;
        let mut out = Vec::new();
        for alpha in 1..m {
            if alpha.gcd(&m) != 1 {
                continue;
            }
            let a = alpha as u128 % modulus;
            if (a * a % modulus) * t.q[0] % modulus == s.q[0] {
                out.push(to_images(&[vec![alpha]]));
                if want == Want::First {
                    break;
                }
            }
        }
        return Ok(out);
    }

    let k = s.factors.len();
    let candidates: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|i| {
            (0..t.order())
                .map(|idx| t.decode(idx))
                .filter(|c| t.element_order(c) == s.factors[i] && t.q(c) == s.q[i])
                .collect()
        })
        .collect();
    let factors_big: Vec<BigInt> = t.factors.iter().map(|&d| BigInt::from(d)).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Vec<u64>> = Vec::with_capacity(k);
    backtrack(&s, &t, &candidates, &factors_big, &mut chosen, want, &mut |cols| {
        out.push(to_images(cols));
    });
    Ok(out)
}

fn backtrack(
    s: &Compact,
    t: &Compact,
    candidates: &[Vec<Vec<u64>>],
    factors: &[BigInt],
    chosen: &mut Vec<Vec<u64>>,
    want: Want,
    emit: &mut dyn FnMut(&[Vec<u64>]),
) -> bool {
    let i = chosen.len();
    if i == candidates.len() {
        let images: Vec<Vec<BigInt>> = chosen
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        if is_surjective(&images, factors) {
            emit(chosen);
            return want == Want::First;
        }
        return false;
    }
    for cand in &candidates[i] {
        if (0..i).any(|j| t.b(cand, &chosen[j]) != s.b[i][j]) {
            continue;
        }
        chosen.push(cand.clone());
        let done = backtrack(s, t, candidates, factors, chosen, want, emit);
        chosen.pop();
        if done {
            return true;
        }
    }
    false
}

/// The lexicographically least isometry `a → b`, if any.
pub fn is_isometric_modules(
    a: &FiniteQuadraticModule,
    b: &FiniteQuadraticModule,
) -> Result<Option<ModuleIsometry>> {
    is_isometric_modules_bounded(a, b, DEFAULT_ORDER_BOUND)
}

pub fn is_isometric_modules_bounded(
    a: &FiniteQuadraticModule,
    b: &FiniteQuadraticModule,
    bound: u64,
) -> Result<Option<ModuleIsometry>> {
    Ok(search_isometries(a, b, bound, Want::First)?.into_iter().next())
}

/// All q-preserving automorphisms, sorted lexicographically.
pub fn orthogonal_group_of_module(a: &FiniteQuadraticModule) -> Result<Vec<ModuleIsometry>> {
    orthogonal_group_of_module_bounded(a, DEFAULT_ORDER_BOUND)
}

pub fn orthogonal_group_of_module_bounded(
    a: &FiniteQuadraticModule,
    bound: u64,
) -> Result<Vec<ModuleIsometry>> {
    search_isometries(a, a, bound, Want::All)
}

/// `γ: A_V → A_{V^⊥}` together with both discriminant modules.
#[derive(Clone, Debug)]
pub struct GammaMap {
    pub source: FiniteQuadraticModule,
    pub target: FiniteQuadraticModule,
    pub map: ModuleIsometry,
    pub complement: SublatticeEmbedding,
}

/// For `V` primitive in a unimodular `L`, lifts each dual vector of `V` to
/// `L` and restricts the resulting functional to `V^⊥`. The result is checked
/// to be a group isomorphism with `q_{V^⊥}(γx) ≡ −q_V(x) mod 2Z`.
pub fn gamma_complement_map(lattice: &Lattice, v: &SublatticeEmbedding) -> Result<GammaMap> {
    if v.ambient() != lattice {
        return Err(Error::InvalidArgument("sublattice is not embedded in this lattice".into()));
    }
    if !lattice.is_unimodular() {
        return Err(Error::NotUnimodular {
            det: lattice.determinant().to_string(),
        });
    }
    if !v.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let v_lat = v.lattice()?;
    let w = v.orthogonal_complement();
    let w_lat = w.lattice()?;
    let dv = DiscriminantGroup::of(&v_lat);
    let dw = DiscriminantGroup::of(&w_lat);
    let source = dv.module()?;
    let target = dw.module()?;
    // r: n x k with Bᵀ r = I, so r φ is a functional on L restricting to φ on V;
    // its lift is G⁻¹ r φ ∈ L and pairing with the complement basis C gives Cᵀ r φ.
    let restrict = &w.basis().transpose() * &primitive_left_inverse(v.basis())?.transpose();
    let k = source.ell();
    let images = (0..k)
        .map(|i| {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            let phi = dv.functional_of(&e);
            dw.coordinates_of_functional(&restrict.mul_vec(&phi))
        })
        .collect();
    let map = ModuleIsometry { images };
    if !source.check_map(&target, &map, -1) {
        return Err(Error::VerificationFailed(
            "gamma is not an anti-isometry of discriminant forms".into(),
        ));
    }
    Ok(GammaMap {
        source,
        target,
        map,
        complement: w,
    })
}
