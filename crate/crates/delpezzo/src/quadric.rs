//! Quadratic forms on a 6-dimensional space and pencils spanned by two of
//! them. A form is its exactly-symmetric Gram matrix; the polynomial
//! coefficient of x_i x_j (i < j) is twice the Gram entry.

use crate::binary_form::{det_linear_pencil, BinaryForm};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::multipoly::MultiPoly;
use crate::scalar::{Field, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Debug)]
pub struct QuadraticForm<F: Field> {
    gram: Mat<F>,
}

impl<F: Field> QuadraticForm<F> {
    pub fn from_gram(gram: Mat<F>) -> Result<Self> {
        if gram.nrows() != 6 || gram.ncols() != 6 {
            return Err(Error::Dimension("Gram matrix must be 6x6".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::Dimension("Gram matrix must be symmetric".into()));
        }
        Ok(QuadraticForm { gram })
    }

    /// Build from polynomial coefficients c_(i,j) of the monomials
    /// x_i x_j with i <= j.
    pub fn from_monomial_coeffs(coeffs: &BTreeMap<(usize, usize), F>) -> Result<Self> {
        let two_inv = F::from_int(2).inv().expect("2 is invertible");
        let mut gram = Mat::zero(6, 6);
        for (&(i, j), c) in coeffs {
            if i > 5 || j > 5 || i > j {
                return Err(Error::BadMonomial(format!("x{i}*x{j}")));
            }
            if i == j {
                gram.set(i, i, c.clone());
            } else {
                let h = c.clone() * two_inv.clone();
                gram.set(i, j, h.clone());
                gram.set(j, i, h);
            }
        }
        QuadraticForm::from_gram(gram)
    }

    pub fn gram(&self) -> &Mat<F> {
        &self.gram
    }

    pub fn is_zero(&self) -> bool {
        (0..6).all(|i| (0..6).all(|j| self.gram.get(i, j).is_zero()))
    }

    /// Q(x) = x^T G x.
    pub fn eval(&self, x: &[F]) -> F {
        self.bilinear(x, x)
    }

    /// The symmetric bilinear form B(x, y) = x^T G y (so Q(x) = B(x, x)).
    pub fn bilinear(&self, x: &[F], y: &[F]) -> F {
        let gy = self.gram.mul_vec(y);
        let mut s = F::zero();
        for (a, b) in x.iter().zip(&gy) {
            s = s + a.clone() * b.clone();
        }
        s
    }

    /// Polynomial coefficient of x_i x_j (i <= j).
    pub fn poly_coeff(&self, i: usize, j: usize) -> F {
        assert!(i <= j);
        if i == j {
            self.gram.get(i, i).clone()
        } else {
            self.gram.get(i, j).clone() + self.gram.get(i, j).clone()
        }
    }

    /// Coefficient vector over the 21 monomials x_i x_j, i <= j, in
    /// lexicographic order.
    pub fn coeff_vector(&self) -> Vec<F> {
        let mut out = Vec::with_capacity(21);
        for i in 0..6 {
            for j in i..6 {
                out.push(self.poly_coeff(i, j));
            }
        }
        out
    }

    /// Substitute x = g * x', i.e. Gram matrix g^T G g.
    pub fn transformed(&self, g: &Mat<F>) -> Self {
        QuadraticForm {
            gram: g.transpose().matmul(&self.gram).matmul(g),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn scale(&self, c: &F) -> Self {
        QuadraticForm {
            gram: Mat::from_fn(6, 6, |i, j| self.gram.get(i, j).clone() * c.clone()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        QuadraticForm {
            gram: Mat::from_fn(6, 6, |i, j| {
                self.gram.get(i, j).clone() + other.gram.get(i, j).clone()
            }),
        }
    }
}

impl QuadraticForm<Rat> {
    /// Expand as a polynomial in x0..x5.
    pub fn to_multipoly(&self) -> MultiPoly {
        let vars = MultiPoly::vars_named(&["x0", "x1", "x2", "x3", "x4", "x5"]);
        let mut acc = MultiPoly::zero(vars.clone());
        for i in 0..6 {
            for j in i..6 {
                let c = self.poly_coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0u16; 6];
                e[i] += 1;
                e[j] += 1;
                acc = acc.add(&MultiPoly::monomial(vars.clone(), e, c));
            }
        }
        acc
    }
}

/// A pencil of quadrics: the span of two linearly independent forms.
/// The ordered generators are retained; span-level questions must not
/// depend on the choice.
#[derive(Clone, PartialEq, Debug)]
pub struct Pencil<F: Field> {
    a: QuadraticForm<F>,
    b: QuadraticForm<F>,
}

impl<F: Field> Pencil<F> {
    pub fn new(a: QuadraticForm<F>, b: QuadraticForm<F>) -> Result<Self> {
        let m = Mat::from_rows(vec![a.coeff_vector(), b.coeff_vector()])?;
        if m.rank() != 2 {
            return Err(Error::DependentGenerators);
        }
        Ok(Pencil { a, b })
    }

    pub fn gen_a(&self) -> &QuadraticForm<F> {
        &self.a
    }

    pub fn gen_b(&self) -> &QuadraticForm<F> {
        &self.b
    }

    /// Member u * A + v * B.
    pub fn member(&self, u: &F, v: &F) -> QuadraticForm<F> {
        self.a.scale(u).add(&self.b.scale(v))
    }

    /// Substitute x = g * x' in both generators; g must be invertible.
    pub fn apply_transform(&self, g: &Mat<F>) -> Result<Self> {
        if g.inverse().is_none() {
            return Err(Error::SingularTransform);
        }
        Ok(Pencil {
            a: self.a.transformed(g),
            b: self.b.transformed(g),
        })
    }

    /// Span equality as 2-dimensional subspaces of the 21-dimensional
    /// space of quadratic forms.
    pub fn equal_as_spans(&self, other: &Self) -> bool {
        let m = Mat::from_rows(vec![
            self.a.coeff_vector(),
            self.b.coeff_vector(),
            other.a.coeff_vector(),
            other.b.coeff_vector(),
        ])
        .expect("rows have equal length");
        m.rank() == 2
    }

    /// Whether the projective transformation g maps the pencil span to
    /// itself (substitution by g preserves the span).
    pub fn preserved_by(&self, g: &Mat<F>) -> Result<bool> {
        let moved = self.apply_transform(g)?;
        Ok(self.equal_as_spans(&moved))
    }
}

/// Deterministic search ratios for a "generic member": (1,0), (0,1),
/// (1,1), (1,2), (2,1), (1,3), (3,1), (1,4).
pub const GENERIC_MEMBER_SEQUENCE: [(i64, i64); 8] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (1, 2),
    (2, 1),
    (1, 3),
    (3, 1),
    (1, 4),
];

impl Pencil<Rat> {
    /// det(u A + v B), a binary form of degree <= 6 (degree exactly 6 when
    /// some member is nondegenerate); identically zero is returned as the
    /// zero form.
    pub fn discriminant(&self) -> BinaryForm {
        let a: Vec<Vec<Rat>> = (0..6).map(|i| self.a.gram().row(i).to_vec()).collect();
        let b: Vec<Vec<Rat>> = (0..6).map(|i| self.b.gram().row(i).to_vec()).collect();
        det_linear_pencil(&a, &b)
    }

    /// First parameter in the deterministic sequence at which the member
    /// attains the generic (maximal over the sequence) rank.
    pub fn generic_member_params(&self) -> (Rat, Rat) {
        let mut best = None;
        for (u, v) in GENERIC_MEMBER_SEQUENCE {
            let (ur, vr) = (crate::scalar::rat_int(u), crate::scalar::rat_int(v));
            let r = self.member(&ur, &vr).rank();
            match &best {
                Some((_, _, br)) if *br >= r => {}
                _ => best = Some((ur, vr, r)),
            }
        }
        let (u, v, _) = best.expect("nonempty sequence");
        (u, v)
    }

    /// A member with invertible Gram matrix, from the deterministic
    /// sequence; errors when the pencil is degenerate.
    pub fn nondegenerate_member_params(&self) -> Result<(Rat, Rat)> {
        for (u, v) in GENERIC_MEMBER_SEQUENCE {
            let (ur, vr) = (crate::scalar::rat_int(u), crate::scalar::rat_int(v));
            if self.member(&ur, &vr).rank() == 6 {
                return Ok((ur, vr));
            }
        }
        Err(Error::NoNondegenerateMember)
    }

    /// Complete-intersection test for the base locus. The pencil fails
    /// exactly when one linear form divides every member; in that case the
    /// common factor is returned as the witness (a rational covector).
    pub fn is_complete_intersection(&self) -> (bool, Option<Vec<Rat>>) {
        // Eight distinct sample ratios exceed the degree of every 3x3
        // minor of u*A + v*B, so rank <= 2 at all samples forces every
        // member to rank <= 2; a sampled rank >= 3 rules out a common
        // linear factor.
        let (u, v) = self.generic_member_params();
        if self.member(&u, &v).rank() >= 3 {
            return (true, None);
        }
        // All sampled members have rank <= 2; candidates for the shared
        // factor are the linear factors of a nonzero generator.
        for q in [&self.a, &self.b] {
            if q.is_zero() {
                continue;
            }
            for cand in linear_factor_candidates(q) {
                if divides_form(&cand, &self.a) && divides_form(&cand, &self.b) {
                    return (false, Some(cand));
                }
            }
        }
        (true, None)
    }
}

/// Rational linear factors of a quadratic form of rank <= 2, up to scale.
fn linear_factor_candidates(q: &QuadraticForm<Rat>) -> Vec<Vec<Rat>> {
    use num_traits::Zero;
    let g = q.gram();
    // Restrict to the orthogonal complement of the kernel: pick a basis of
    // the row space (dimension = rank <= 2).
    let rank = q.rank();
    if rank == 0 || rank > 2 {
        return Vec::new();
    }
    // Q factors as product of two linear forms (over C). Over Q, extract
    // factors by completing the square along a vector e with Q(e) != 0, or
    // splitting a rank-2 hyperbolic piece.
    // Work with the polynomial directly via a 2-dimensional reduction.
    let rows: Vec<Vec<Rat>> = (0..6).map(|i| g.row(i).to_vec()).collect();
    let mut m = Mat::from_rows(rows).unwrap();
    let pivots = m.rref();
    debug_assert_eq!(pivots.len(), rank);
    // Row space basis (the nonzero rows of the rref).
    let basis: Vec<Vec<Rat>> = (0..rank).map(|i| m.row(i).to_vec()).collect();
    // Express Q in the dual coordinates s_k = <basis_k, x>: since
    // ker(G) = basis^perp, Q(x) depends only on (s_1, .., s_rank) through
    // a small symmetric matrix S with Q(x) = s^T S s. Solve for S from
    // evaluations at probe vectors.
    let probes: Vec<Vec<Rat>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    if i == j {
                        Rat::from_integer(1.into())
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    let sval = |x: &Vec<Rat>| -> Vec<Rat> {
        basis
            .iter()
            .map(|b| b.iter().zip(x).map(|(a, c)| a * c).sum())
            .collect()
    };
    if rank == 1 {
        // Q = c * l^2 with l the basis covector: find c from a probe with
        // s != 0.
        for p in &probes {
            let s = sval(p);
            if !Zero::is_zero(&s[0]) {
                return vec![basis[0].clone()];
            }
        }
        return vec![basis[0].clone()];
    }
    // rank == 2: Q = alpha s0^2 + beta s0 s1 + gamma s1^2 in the dual
    // coordinates. Recover alpha, beta, gamma by evaluating on vectors
    // whose s-coordinates we can control: solve the 3x3 linear system from
    // three probes with independent (s0^2, s0 s1, s1^2) rows.
    let mut rows3 = Vec::new();
    let mut rhs = Vec::new();
    for p in &probes {
        let s = sval(p);
        rows3.push(vec![s[0].clone() * s[0].clone(), s[0].clone() * s[1].clone(), s[1].clone() * s[1].clone()]);
        rhs.push(q.eval(p));
        // also probe sums of basis vectors below
    }
    let mut pairs = Vec::new();
    for i in 0..6usize {
        for j in (i + 1)..6usize {
            pairs.push((i, j));
        }
    }
    for (i, j) in pairs {
        let p: Vec<Rat> = (0..6)
            .map(|k| {
                let a = if k == i { Rat::from_integer(1.into()) } else { Rat::zero() };
                let b = if k == j { Rat::from_integer(1.into()) } else { Rat::zero() };
                a + b
            })
            .collect();
        let s = sval(&p);
        rows3.push(vec![s[0].clone() * s[0].clone(), s[0].clone() * s[1].clone(), s[1].clone() * s[1].clone()]);
        rhs.push(q.eval(&p));
    }
    // Solve least-squares-free: find any solution of the consistent system.
    let mut aug = Mat::from_fn(rows3.len(), 4, |i, j| {
        if j < 3 {
            rows3[i][j].clone()
        } else {
            rhs[i].clone()
        }
    });
    let piv = aug.rref();
    let mut alpha = Rat::zero();
    let mut beta = Rat::zero();
    let mut gamma = Rat::zero();
    for (r, &c) in piv.iter().enumerate() {
        match c {
            0 => alpha = aug.get(r, 3).clone(),
            1 => beta = aug.get(r, 3).clone(),
            2 => gamma = aug.get(r, 3).clone(),
            _ => {}
        }
    }
    // Factor alpha t^2 + beta t + gamma (t = s0/s1) over Q.
    let two = Rat::from_integer(2.into());
    let four = Rat::from_integer(4.into());
    let mut out = Vec::new();
    let comb = |c0: &Rat, c1: &Rat| -> Vec<Rat> {
        basis[0]
            .iter()
            .zip(&basis[1])
            .map(|(a, b)| c0 * a + c1 * b)
            .collect()
    };
    if Zero::is_zero(&alpha) && Zero::is_zero(&gamma) {
        // beta s0 s1
        out.push(basis[0].clone());
        out.push(basis[1].clone());
    } else if Zero::is_zero(&alpha) {
        // s1 (beta s0 + gamma s1)
        out.push(basis[1].clone());
        out.push(comb(&beta, &gamma));
    } else {
        let disc = beta.clone() * beta.clone() - four * alpha.clone() * gamma.clone();
        if let Some(sq) = rat_sqrt(&disc) {
            // alpha (s0 - t1 s1)(s0 - t2 s1) with t = (-beta +/- sq) / (2 alpha)
            let t1 = (-beta.clone() + sq.clone()) / (two.clone() * alpha.clone());
            let t2 = (-beta.clone() - sq) / (two * alpha);
            out.push(comb(&Rat::from_integer(1.into()), &-t1));
            out.push(comb(&Rat::from_integer(1.into()), &-t2));
        }
        // irrational roots: no rational linear factor from this form
    }
    out.retain(|l| l.iter().any(|c| !Zero::is_zero(c)));
    out
}

/// Exact rational square root, if one exists.
fn rat_sqrt(r: &Rat) -> Option<Rat> {
    use num_traits::{Signed, Zero};
    if Zero::is_zero(r) {
        return Some(Rat::zero());
    }
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// True when the linear form l (as a covector) divides the quadratic form:
/// the restriction of Q to the hyperplane l = 0 vanishes identically.
fn divides_form(l: &[Rat], q: &QuadraticForm<Rat>) -> bool {
    use num_traits::Zero;
    let m = Mat::from_rows(vec![l.to_vec()]).unwrap();
    let kernel = m.kernel_basis();
    debug_assert_eq!(kernel.len(), 5);
    for (i, a) in kernel.iter().enumerate() {
        for b in kernel.iter().skip(i) {
            if !Zero::is_zero(&q.bilinear(a, b)) {
                return false;
            }
        }
    }
    true
}

/// Convenience constructor from monomial coefficient pairs (i, j, c) with
/// integer coefficients; intended for tests and fixtures.
pub fn quadric_from_terms(terms: &[(usize, usize, i64)]) -> QuadraticForm<Rat> {
    let mut m = BTreeMap::new();
    for &(i, j, c) in terms {
        let key = if i <= j { (i, j) } else { (j, i) };
        let e = m.entry(key).or_insert_with(Rat::zero);
        *e += crate::scalar::rat_int(c);
    }
    QuadraticForm::from_monomial_coeffs(&m).expect("valid terms")
}
