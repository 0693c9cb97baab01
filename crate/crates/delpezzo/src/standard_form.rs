//! Normalization of a pair (pencil, contained line) to coordinates where
//! the line is x2 = ... = x5 = 0 and each generator reads
//! x0*l0 + x1*l1 + q with l0, l1 linear and q quadratic in x2..x5.

use crate::error::{Error, Result};
use crate::line::{line_in_pencil, ProjLine};
use crate::matrix::{Mat, QMat};
use crate::multipoly::MultiPoly;
use crate::quadric::{Pencil, QuadraticForm};
use crate::scalar::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Variables of the residual space x2..x5.
pub fn residual_vars() -> Arc<Vec<String>> {
    MultiPoly::vars_named(&["x2", "x3", "x4", "x5"])
}

/// A pair in standard position. `transform` is the substitution matrix g
/// (x = g x') carrying the original pair to the standard one; the line
/// maps to span(e0, e1).
#[derive(Clone, PartialEq, Debug)]
pub struct StandardPair {
    pub transform: QMat,
    pub l0: MultiPoly,
    pub l1: MultiPoly,
    pub l0p: MultiPoly,
    pub l1p: MultiPoly,
    pub q: MultiPoly,
    pub qp: MultiPoly,
}

/// Decompose a standard-position quadratic form into (l0, l1, q).
fn split_standard(qf: &QuadraticForm<Rat>) -> Result<(MultiPoly, MultiPoly, MultiPoly)> {
    let vars = residual_vars();
    for (i, j) in [(0, 0), (0, 1), (1, 1)] {
        if !qf.poly_coeff(i, j).is_zero() {
            return Err(Error::LineNotInBaseLocus);
        }
    }
    let mut l0 = MultiPoly::zero(vars.clone());
    let mut l1 = MultiPoly::zero(vars.clone());
    let mut q = MultiPoly::zero(vars.clone());
    for k in 2..6 {
        let c0 = qf.poly_coeff(0, k);
        if !c0.is_zero() {
            let mut e = vec![0u16; 4];
            e[k - 2] = 1;
            l0 = l0.add(&MultiPoly::monomial(vars.clone(), e, c0));
        }
        let c1 = qf.poly_coeff(1, k);
        if !c1.is_zero() {
            let mut e = vec![0u16; 4];
            e[k - 2] = 1;
            l1 = l1.add(&MultiPoly::monomial(vars.clone(), e, c1));
        }
    }
    for j in 2..6 {
        for k in j..6 {
            let c = qf.poly_coeff(j, k);
            if !c.is_zero() {
                let mut e = vec![0u16; 4];
                e[j - 2] += 1;
                e[k - 2] += 1;
                q = q.add(&MultiPoly::monomial(vars.clone(), e, c));
            }
        }
    }
    Ok((l0, l1, q))
}

/// Assemble x0*l0 + x1*l1 + q back into a 6-variable quadratic form.
pub fn assemble_standard(l0: &MultiPoly, l1: &MultiPoly, q: &MultiPoly) -> QuadraticForm<Rat> {
    let mut coeffs: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
    let read_linear = |p: &MultiPoly, row: usize, coeffs: &mut BTreeMap<(usize, usize), Rat>| {
        for (e, c) in p.terms() {
            let k = e.iter().position(|&x| x == 1).expect("linear term");
            debug_assert_eq!(e.iter().map(|&x| x as u32).sum::<u32>(), 1);
            coeffs.insert((row, k + 2), c.clone());
        }
    };
    read_linear(l0, 0, &mut coeffs);
    read_linear(l1, 1, &mut coeffs);
    for (e, c) in q.terms() {
        let idx: Vec<usize> = e
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i + 2, k as usize))
            .collect();
        debug_assert_eq!(idx.len(), 2);
        coeffs.insert((idx[0], idx[1]), c.clone());
    }
    QuadraticForm::from_monomial_coeffs(&coeffs).expect("standard shape")
}

impl StandardPair {
    /// The standardized pencil (x0*l0 + x1*l1 + q, x0*l0' + x1*l1' + q').
    pub fn reconstruct(&self) -> Result<Pencil<Rat>> {
        Pencil::new(
            assemble_standard(&self.l0, &self.l1, &self.q),
            assemble_standard(&self.l0p, &self.l1p, &self.qp),
        )
    }

    /// The four linear forms as a 4x4 coefficient matrix (rows l0, l1,
    /// l0', l1'; columns x2..x5).
    pub fn linear_block(&self) -> QMat {
        let mut m = Mat::zero(4, 4);
        for (r, l) in [&self.l0, &self.l1, &self.l0p, &self.l1p].iter().enumerate() {
            for (e, c) in l.terms() {
                let k = e.iter().position(|&x| x == 1).expect("linear term");
                m.set(r, k, c.clone());
            }
        }
        m
    }
}

/// Move the line to span(e0, e1) by extending its basis with standard
/// basis vectors (greedy, in index order) and rewrite the generators in
/// the standard shape.
pub fn standardize_pair(pencil: &Pencil<Rat>, line: &ProjLine) -> Result<StandardPair> {
    if !line_in_pencil(line, pencil) {
        return Err(Error::LineNotInBaseLocus);
    }
    let [p, q] = line.basis();
    let mut cols: Vec<Vec<Rat>> = vec![p.clone(), q.clone()];
    for k in 0..6 {
        if cols.len() == 6 {
            break;
        }
        let mut e = vec![Rat::zero(); 6];
        e[k] = num_traits::One::one();
        let mut trial = cols.clone();
        trial.push(e);
        let m = QMat::from_rows(trial.clone())?;
        if m.rank() == cols.len() + 1 {
            cols = trial;
        }
    }
    debug_assert_eq!(cols.len(), 6);
    let g = QMat::from_rows(cols)?.transpose(); // columns are the basis
    let moved = pencil.apply_transform(&g)?;
    // sanity: the moved line is span(e0, e1)
    debug_assert!(line
        .apply_transform(&g)
        .expect("g invertible")
        .same_line(&crate::line::coordinate_line(0, 1)));
    let (l0, l1, q0) = split_standard(moved.gen_a())?;
    let (l0p, l1p, qp) = split_standard(moved.gen_b())?;
    Ok(StandardPair {
        transform: g,
        l0,
        l1,
        l0p,
        l1p,
        q: q0,
        qp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::coordinate_line;
    use crate::quadric::quadric_from_terms;
    use crate::scalar::{rat_int, Rat};

    fn half_pair() -> Pencil<Rat> {
        Pencil::new(
            quadric_from_terms(&[(0, 2, 1), (1, 3, 1)]),
            quadric_from_terms(&[(0, 4, 1), (1, 5, 1)]),
        )
        .unwrap()
    }

    #[test]
    fn already_standard_pair_reads_off() {
        let sp = standardize_pair(&half_pair(), &coordinate_line(0, 1)).unwrap();
        assert_eq!(sp.transform, Mat::identity(6));
        let vars = residual_vars();
        assert_eq!(sp.l0, MultiPoly::var(vars.clone(), 0)); // x2
        assert_eq!(sp.l1, MultiPoly::var(vars.clone(), 1)); // x3
        assert_eq!(sp.l0p, MultiPoly::var(vars.clone(), 2)); // x4
        assert_eq!(sp.l1p, MultiPoly::var(vars.clone(), 3)); // x5
        assert!(sp.q.is_zero() && sp.qp.is_zero());
        assert!(sp.reconstruct().unwrap().equal_as_spans(&half_pair()));
    }

    #[test]
    fn permuted_coordinates_recovered() {
        // swap (0<->2)(1<->3): line becomes span(e2, e3)
        let mut g = Mat::zero(6, 6);
        for (i, j) in [(0, 2), (2, 0), (1, 3), (3, 1), (4, 4), (5, 5)] {
            g.set(i, j, num_traits::One::one());
        }
        let moved_pencil = half_pair().apply_transform(&g).unwrap();
        let moved_line = coordinate_line(0, 1).apply_transform(&g).unwrap();
        let sp = standardize_pair(&moved_pencil, &moved_line).unwrap();
        // the recovered standard pencil spans the transformed original
        let std_pencil = sp.reconstruct().unwrap();
        let back = moved_pencil.apply_transform(&sp.transform).unwrap();
        assert!(std_pencil.equal_as_spans(&back));
        // and the transform really moves the line to span(e0, e1)
        assert!(moved_line
            .apply_transform(&sp.transform)
            .unwrap()
            .same_line(&coordinate_line(0, 1)));
    }

    #[test]
    fn random_gl6_image_roundtrip() {
        // a fixed unimodular-ish matrix
        let rows: Vec<Vec<Rat>> = vec![
            vec![1, 2, 0, 1, 0, 0],
            vec![0, 1, 1, 0, 1, 0],
            vec![1, 0, 1, 0, 0, 1],
            vec![0, 0, 1, 1, 1, 0],
            vec![1, 1, 0, 0, 1, 0],
            vec![0, 1, 0, 1, 0, 1],
        ]
        .into_iter()
        .map(|r| r.into_iter().map(rat_int).collect())
        .collect();
        let g = QMat::from_rows(rows).unwrap();
        assert!(g.inverse().is_some());
        let moved_pencil = half_pair().apply_transform(&g).unwrap();
        let moved_line = coordinate_line(0, 1).apply_transform(&g).unwrap();
        assert!(crate::line::line_in_pencil(&moved_line, &moved_pencil));
        let sp = standardize_pair(&moved_pencil, &moved_line).unwrap();
        let std_pencil = sp.reconstruct().unwrap();
        assert!(std_pencil.equal_as_spans(&moved_pencil.apply_transform(&sp.transform).unwrap()));
        // round trip through the inverse transform recovers the span
        let gi = sp.transform.inverse().unwrap();
        assert!(std_pencil
            .apply_transform(&gi)
            .unwrap()
            .equal_as_spans(&moved_pencil));
    }

    #[test]
    fn containment_checked() {
        let p = Pencil::new(
            quadric_from_terms(&[(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1), (4, 4, 1), (5, 5, 1)]),
            quadric_from_terms(&[(1, 1, 1), (2, 2, 2), (3, 3, 3), (4, 4, 4), (5, 5, 5)]),
        )
        .unwrap();
        assert_eq!(
            standardize_pair(&p, &coordinate_line(0, 1)).unwrap_err(),
            Error::LineNotInBaseLocus
        );
    }
}
