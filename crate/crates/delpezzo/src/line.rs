//! Lines in P^5 as rank-2 subspaces with derived Pluecker coordinates,
//! containment in pencil base loci, and the singularity analysis of a
//! pencil along a contained line.

use crate::binary_form::{factor_rational, poly_gcd, BinaryForm};
use crate::error::{Error, Result};
use crate::matrix::QMat;
use crate::quadric::Pencil;
use crate::scalar::Rat;
use num_traits::{One, Zero};

/// Index pairs (i, j), i < j, in lexicographic order; position k of the
/// Pluecker vector corresponds to `PAIR_ORDER[k]`.
pub const PAIR_ORDER: [(usize, usize); 15] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

#[derive(Clone, PartialEq, Debug)]
pub struct ProjLine {
    basis: [Vec<Rat>; 2],
    pluecker: [Rat; 15],
}

/// Construct the line through two points of P^5 given by linearly
/// independent coordinate vectors. The Pluecker vector p_ij = p_i q_j -
/// p_j q_i is canonicalized so its first nonzero coordinate is one.
pub fn line_from_points(p: &[Rat], q: &[Rat]) -> Result<ProjLine> {
    if p.len() != 6 || q.len() != 6 {
        return Err(Error::Dimension("points must have 6 coordinates".into()));
    }
    let mut pl: Vec<Rat> = PAIR_ORDER
        .iter()
        .map(|&(i, j)| &p[i] * &q[j] - &p[j] * &q[i])
        .collect();
    let Some(first) = pl.iter().position(|c| !c.is_zero()) else {
        return Err(Error::DependentPoints);
    };
    let inv = pl[first].clone().recip();
    for c in pl.iter_mut() {
        *c *= &inv;
    }
    Ok(ProjLine {
        basis: [p.to_vec(), q.to_vec()],
        pluecker: pl.try_into().expect("15 coordinates"),
    })
}

/// The line cut out by four independent linear equations (rows of
/// coefficients on x0..x5).
pub fn line_from_equations(eqs: &[Vec<Rat>]) -> Result<ProjLine> {
    if eqs.len() != 4 || eqs.iter().any(|e| e.len() != 6) {
        return Err(Error::Dimension("expected four linear forms on x0..x5".into()));
    }
    let m = QMat::from_rows(eqs.to_vec())?;
    let kernel = m.kernel_basis();
    if kernel.len() != 2 {
        return Err(Error::Dimension(format!(
            "equations cut out a subspace of dimension {}, not a line",
            kernel.len()
        )));
    }
    line_from_points(&kernel[0], &kernel[1])
}

impl ProjLine {
    pub fn basis(&self) -> &[Vec<Rat>; 2] {
        &self.basis
    }

    pub fn pluecker(&self) -> &[Rat; 15] {
        &self.pluecker
    }

    /// Index pairs {i, j} with nonvanishing Pluecker coordinate.
    pub fn states(&self) -> Vec<(usize, usize)> {
        PAIR_ORDER
            .iter()
            .zip(&self.pluecker)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&ij, _)| ij)
            .collect()
    }

    /// Same point of the Grassmannian.
    pub fn same_line(&self, other: &ProjLine) -> bool {
        self.pluecker == other.pluecker
    }

    /// Image under the coordinate substitution x = g x': the new basis is
    /// g^(-1) applied to the old one, matching `Pencil::apply_transform`.
    pub fn apply_transform(&self, g: &QMat) -> Result<ProjLine> {
        let gi = g.inverse().ok_or(Error::SingularTransform)?;
        line_from_points(&gi.mul_vec(&self.basis[0]), &gi.mul_vec(&self.basis[1]))
    }

    /// Verify the five 3-term Pluecker relations; true for every line
    /// constructed from a basis (used in tests as a sanity check).
    pub fn pluecker_relations_hold(&self) -> bool {
        let idx = |i: usize, j: usize| -> Rat {
            if i == j {
                return Rat::zero();
            }
            let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            let k = PAIR_ORDER.iter().position(|&p| p == (a, b)).unwrap();
            &self.pluecker[k] * crate::scalar::rat_int(sign)
        };
        // p_ij p_kl - p_ik p_jl + p_il p_jk = 0 for all i<j<k<l
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    for l in k + 1..6 {
                        let s = idx(i, j) * idx(k, l) - idx(i, k) * idx(j, l)
                            + idx(i, l) * idx(j, k);
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// True when the line lies on every member of the pencil: both generators
/// vanish on the spanning points and on their polarization.
pub fn line_in_pencil(line: &ProjLine, pencil: &Pencil<Rat>) -> bool {
    let [p, q] = line.basis();
    for g in [pencil.gen_a(), pencil.gen_b()] {
        if !g.eval(p).is_zero() || !g.eval(q).is_zero() || !g.bilinear(p, q).is_zero() {
            return false;
        }
    }
    true
}

/// Locus of points on the line where the base locus is singular.
#[derive(Clone, PartialEq, Debug)]
pub enum LineSingularities {
    /// The Jacobian has full rank everywhere on the line.
    None,
    /// Parameter values (u p + v q), reported as the irreducible rational
    /// factors of the gcd of the Jacobian 2x2 minors, with multiplicities.
    Points(Vec<(BinaryForm, u32)>),
    /// The Jacobian drops rank along the whole line.
    WholeLine,
}

/// Singular points of the pencil's base locus along a contained line,
/// plus the generic-smoothness flag (false exactly in the whole-line
/// case). The Jacobian rows are the gradients of the two generators at
/// u p + v q; singular parameters are common zeros of its 2x2 minors.
pub fn singularities_on_line(
    pencil: &Pencil<Rat>,
    line: &ProjLine,
) -> Result<(LineSingularities, bool)> {
    if !line_in_pencil(line, pencil) {
        return Err(Error::LineNotInBaseLocus);
    }
    let [p, q] = line.basis();
    // gradient of Q at u p + v q is 2 G (u p + v q): entry k is the linear
    // binary form 2 (G p)_k u + 2 (G q)_k v.
    let rows: Vec<[Vec<Rat>; 2]> = [pencil.gen_a(), pencil.gen_b()]
        .iter()
        .map(|g| {
            let gp = g.gram().mul_vec(p);
            let gq = g.gram().mul_vec(q);
            [gp, gq]
        })
        .collect();
    let mut minor_gcd: Option<BinaryForm> = None;
    let mut any_nonzero = false;
    for a in 0..6 {
        for b in (a + 1)..6 {
            // minor of columns a, b of the 2x6 Jacobian
            let f = |r: usize, c: usize| BinaryForm::linear(rows[r][0][c].clone(), rows[r][1][c].clone());
            let m = f(0, a).mul(&f(1, b)).sub(&f(0, b).mul(&f(1, a)));
            if m.is_zero() {
                continue;
            }
            any_nonzero = true;
            minor_gcd = Some(match minor_gcd {
                None => m,
                Some(g) => poly_gcd(&g, &m)?,
            });
        }
    }
    if !any_nonzero {
        return Ok((LineSingularities::WholeLine, false));
    }
    let g = minor_gcd.expect("set when any minor is nonzero");
    if g.degree() == Some(0) {
        return Ok((LineSingularities::None, true));
    }
    let factors = factor_rational(&g)?;
    Ok((LineSingularities::Points(factors), true))
}

/// Rational singular parameters: points u p + v q with (u, v) a rational
/// zero of a degree-1 factor from `singularities_on_line`.
pub fn rational_singular_points(
    pencil: &Pencil<Rat>,
    line: &ProjLine,
) -> Result<Vec<Vec<Rat>>> {
    let (sing, _) = singularities_on_line(pencil, line)?;
    let mut out = Vec::new();
    if let LineSingularities::Points(fs) = sing {
        let [p, q] = line.basis();
        for (f, _) in fs {
            if f.degree() != Some(1) {
                continue;
            }
            // f = a u + b v vanishes at (u, v) = (b, -a)
            let a = f.coeff(1);
            let b = f.coeff(0);
            let pt: Vec<Rat> = (0..6).map(|k| &b * &p[k] - &a * &q[k]).collect();
            out.push(pt);
        }
    }
    Ok(out)
}

/// Convenience: the line spanned by the standard basis vectors e_i, e_j.
pub fn coordinate_line(i: usize, j: usize) -> ProjLine {
    let mut p = vec![Rat::zero(); 6];
    let mut q = vec![Rat::zero(); 6];
    p[i] = Rat::one();
    q[j] = Rat::one();
    line_from_points(&p, &q).expect("independent basis vectors")
}
