//! Dense complex-integer matrix representation of the generators, used as an
//! independent oracle for normal ordering and traces.

use num_complex::Complex;

use super::element::{AlgebraSignature, CliffordElement, Coeff, Multivector, TraceDim};
use super::word::{CliffordWord, Generator};
use crate::error::{Result, WresError};
use crate::symbolic::{GaussianRational, Q};

pub type Cx = Complex<i64>;

/// Square matrix with Gaussian-integer entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    dim: usize,
    data: Vec<Cx>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Cx::new(0, 0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Cx::new(1, 0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Cx]]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "matrix must be square");
            data.extend_from_slice(r);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Cx {
        self.data[i * self.dim + j]
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Cx::new(0, 0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { dim: self.dim, data }
    }

    pub fn scale(&self, s: Cx) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        let n = self.dim * o.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                if a == Cx::new(0, 0) {
                    continue;
                }
                for k in 0..o.dim {
                    for l in 0..o.dim {
                        out.data[(i * o.dim + k) * n + j * o.dim + l] = a * o.get(k, l);
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Cx {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}

fn pauli(name: char) -> Matrix {
    let z = Cx::new(0, 0);
    let o = Cx::new(1, 0);
    let i = Cx::new(0, 1);
    match name {
        'X' => Matrix::from_rows(&[&[z, o], &[o, z]]),
        'Y' => Matrix::from_rows(&[&[z, -i], &[i, z]]),
        'Z' => Matrix::from_rows(&[&[o, z], &[z, -o]]),
        // a† − a on one fermionic mode
        'C' => Matrix::from_rows(&[&[z, -o], &[o, z]]),
        _ => Matrix::identity(2),
    }
}

fn string(ops: &[char]) -> Matrix {
    ops.iter().fold(Matrix::identity(1), |acc, c| acc.kron(&pauli(*c)))
}

/// Explicit matrices for every generator of a signature.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    sig: AlgebraSignature,
    cf: Vec<Matrix>,
    ch: Vec<Matrix>,
    hh: Vec<Matrix>,
    dim: usize,
}

impl MatrixRep {
    /// Builds the representation; odd `p` uses the faithful representation of
    /// dimension `2^{(p+1)/2}` on the leaf factor so that nonempty words stay
    /// traceless.
    pub fn new(sig: AlgebraSignature) -> Result<Self> {
        if sig.p > 8 || sig.q > 6 {
            return Err(WresError::SizeGuard { p: sig.p, q: sig.q });
        }
        let k = sig.p.div_ceil(2);
        let mut leaf = Vec::new();
        for idx in 0..sig.p {
            let j = idx / 2;
            let mut ops = vec!['Z'; j];
            ops.push(if idx % 2 == 0 { 'X' } else { 'Y' });
            ops.extend(std::iter::repeat_n('I', k - j - 1));
            leaf.push(string(&ops).scale(Cx::new(0, 1)));
        }
        let parity = string(&vec!['Z'; sig.q]);
        let leaf_id = Matrix::identity(1 << k);
        let mut ch = Vec::new();
        let mut hh = Vec::new();
        for s in 0..sig.q {
            let mut c_ops = vec!['Z'; s];
            c_ops.push('C');
            c_ops.extend(std::iter::repeat_n('I', sig.q - s - 1));
            let mut h_ops = c_ops.clone();
            h_ops[s] = 'X';
            ch.push(leaf_id.kron(&string(&c_ops)));
            hh.push(leaf_id.kron(&string(&h_ops)));
        }
        let cf = leaf.iter().map(|m| m.kron(&parity)).collect();
        Ok(Self { sig, cf, ch, hh, dim: (1 << k) << sig.q })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn signature(&self) -> AlgebraSignature {
        self.sig
    }

    pub fn generator(&self, g: Generator) -> &Matrix {
        match g {
            Generator::Cf(i) => &self.cf[i as usize - 1],
            Generator::Ch(s) => &self.ch[s as usize - 1],
            Generator::Hh(s) => &self.hh[s as usize - 1],
        }
    }

    pub fn word(&self, raw: &[Generator]) -> Matrix {
        raw.iter().fold(Matrix::identity(self.dim), |acc, g| acc.mul(self.generator(*g)))
    }

    pub fn canonical(&self, w: &CliffordWord) -> Matrix {
        self.word(&w.generators())
    }

    /// Matrix of an element whose coefficients are Gaussian integers.
    pub fn element(&self, x: &CliffordElement) -> Option<Matrix> {
        let mut out = Matrix::zeros(self.dim);
        for (w, c) in x.terms() {
            let c = c.as_constant()?;
            out = out.add(&self.canonical(w).scale(to_cx(&c)?));
        }
        Some(out)
    }

    /// Matrix trace rescaled to the fibre dimension `l̃·2^q` used by the
    /// symbolic trace.
    pub fn normalized_trace(&self, m: &Matrix) -> GaussianRational {
        let t = m.trace();
        let scale = Q::new((self.sig.total_dim() as i64).into(), (self.dim as i64).into());
        GaussianRational::new(Q::from_integer(t.re.into()), Q::from_integer(t.im.into())).scale(&scale)
    }
}

/// Trace of an element with arbitrary coefficients, taking each word's trace
/// from its matrix: `Σ_w c_w · (tr M(w) / dim M) · fibre dimension`.
pub fn trace_via_matrix<C: Coeff>(x: &Multivector<C>, rep: &MatrixRep, dim: &TraceDim) -> C {
    let mut out = C::czero();
    let d = Q::from_integer((rep.dim() as i64).into());
    for (w, c) in x.terms() {
        let t = rep.canonical(w).trace();
        if t == Cx::new(0, 0) {
            continue;
        }
        let ratio = GaussianRational::new(Q::from_integer(t.re.into()) / &d, Q::from_integer(t.im.into()) / &d);
        let f = C::from_poly(&dim.as_poly().scale(&ratio));
        out = out.add_ref(&c.mul_ref(&f));
    }
    out
}

fn to_cx(c: &GaussianRational) -> Option<Cx> {
    if !c.re.is_integer() || !c.im.is_integer() {
        return None;
    }
    let re: i64 = c.re.to_integer().try_into().ok()?;
    let im: i64 = c.im.to_integer().try_into().ok()?;
    Some(Cx::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::element::trace;
    use Generator::*;

    #[test]
    fn defining_relations() {
        let rep = MatrixRep::new(AlgebraSignature::new(3, 2)).unwrap();
        let id = Matrix::identity(rep.dim());
        let gens: Vec<Generator> = (1..=3).map(Cf).chain((1..=2).map(Ch)).chain((1..=2).map(Hh)).collect();
        for a in &gens {
            let sq = rep.word(&[*a, *a]);
            assert_eq!(sq, id.scale(Cx::new(a.square() as i64, 0)));
            for b in &gens {
                if a != b {
                    let ab = rep.word(&[*a, *b]);
                    let ba = rep.word(&[*b, *a]);
                    assert_eq!(ab.add(&ba), Matrix::zeros(rep.dim()));
                }
            }
        }
    }

    #[test]
    fn hat_square_trace_is_total_dim() {
        let sig = AlgebraSignature::new(2, 2);
        let rep = MatrixRep::new(sig).unwrap();
        let m = rep.word(&[Hh(1), Hh(1)]);
        assert_eq!(rep.normalized_trace(&m), GaussianRational::from_int(8));
        let x = CliffordElement::from_raw(&[Hh(1), Hh(1)]);
        assert_eq!(trace(&x, &sig).as_constant().unwrap(), GaussianRational::from_int(8));
    }

    #[test]
    fn size_guard() {
        assert!(matches!(MatrixRep::new(AlgebraSignature::new(9, 1)), Err(WresError::SizeGuard { .. })));
        assert!(matches!(MatrixRep::new(AlgebraSignature::new(2, 7)), Err(WresError::SizeGuard { .. })));
    }
}
