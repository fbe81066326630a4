use coeff_ring::{q, qi, Q};
use num_traits::{One, Zero};

use crate::algebra::{QuadraticLieAlgebra, WittBasis};
use crate::linalg::{self, Mat};
use crate::multivec::{wedge_sign, Multivec};
use crate::QlaError;

/// The Fock module `ΛW` of `Cl(𝔤)`, with basis the subsets of the `W` half.
///
/// Basis spinor `S` (a bitmask over `0..h`) stands for `w_{s_1} ∧ … ∧ w_{s_p}`.
/// Operators are dense `2^h × 2^h` matrices acting on column vectors.
#[derive(Clone, Debug)]
pub struct SpinorModule {
    h: usize,
    n: usize,
    /// `γ_{e_k}` for each basis vector of `𝔤`.
    gamma: Vec<Mat>,
    pairing: Mat,
}

/// Sign and target of `w_j ∧ S`.
fn wedge_on(j: usize, s: u32) -> Option<(u32, i32)> {
    if s >> j & 1 == 1 {
        return None;
    }
    let below = (s & ((1u32 << j) - 1)).count_ones();
    Some((s | 1 << j, if below % 2 == 0 { 1 } else { -1 }))
}

/// Sign and target of the contraction `ι_j S`.
fn contract_on(j: usize, s: u32) -> Option<(u32, i32)> {
    if s >> j & 1 == 0 {
        return None;
    }
    let below = (s & ((1u32 << j) - 1)).count_ones();
    Some((s & !(1 << j), if below % 2 == 0 { 1 } else { -1 }))
}

impl SpinorModule {
    pub(crate) fn new(g: &QuadraticLieAlgebra, witt: &WittBasis) -> Self {
        let h = witt.w.len();
        let n = g.dim();
        let size = 1usize << h;
        let gamma = (0..n)
            .map(|k| {
                let e = g.basis_vector(k);
                let mut m = linalg::zeros(size, size);
                for j in 0..h {
                    // e = Σ a_j w_j + Σ b_j w′_j with a_j = ⟨e, w′_j⟩ and b_j = ⟨e, w_j⟩.
                    let a = g.pair(&e, &witt.w_prime[j]);
                    let b = g.pair(&e, &witt.w[j]) * qi(2);
                    for s in 0..size as u32 {
                        if !a.is_zero() {
                            if let Some((t, sign)) = wedge_on(j, s) {
                                m[t as usize][s as usize] += &a * qi(sign.into());
                            }
                        }
                        if !b.is_zero() {
                            if let Some((t, sign)) = contract_on(j, s) {
                                m[t as usize][s as usize] += &b * qi(sign.into());
                            }
                        }
                    }
                }
                m
            })
            .collect();
        let mut pairing = linalg::zeros(size, size);
        let full = (size as u32).wrapping_sub(1);
        for s in 0..size as u32 {
            let c = full & !s;
            let p = s.count_ones() as i64;
            let rev = if (p * (p - 1) / 2) % 2 == 0 { 1 } else { -1 };
            pairing[s as usize][c as usize] = qi(rev * wedge_sign(s as u64, c as u64) as i64);
        }
        Self {
            h,
            n,
            gamma,
            pairing,
        }
    }

    /// Half-dimension `h`; the module has dimension `2^h`.
    pub fn half_dim(&self) -> usize {
        self.h
    }

    pub fn size(&self) -> usize {
        1 << self.h
    }

    /// Parity of basis spinor `s`.
    pub fn parity(&self, s: usize) -> u32 {
        s.count_ones() % 2
    }

    pub fn gamma_basis(&self, k: usize) -> &Mat {
        &self.gamma[k]
    }

    /// `γ_v = Σ v_k γ_{e_k}`.
    pub fn gamma(&self, v: &[Q]) -> Mat {
        let mut out = linalg::zeros(self.size(), self.size());
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = linalg::add(&out, &linalg::scale(&self.gamma[k], c));
            }
        }
        out
    }

    /// Clifford image of a basis word, antisymmetrized: `(1/p!) Σ sgn(σ) γ_{σ(1)} ⋯ γ_{σ(p)}`.
    fn quantize_word(&self, mask: u64) -> Mat {
        let idx: Vec<usize> = (0..self.n).filter(|&i| mask >> i & 1 == 1).collect();
        let size = self.size();
        let mut total = linalg::zeros(size, size);
        let mut count = 0i64;
        for_each_permutation(&idx, |perm, sign| {
            let mut m = linalg::identity(size);
            for &i in perm {
                m = linalg::mul(&m, &self.gamma[i]);
            }
            total = if sign > 0 {
                linalg::add(&total, &m)
            } else {
                linalg::sub(&total, &m)
            };
            count += 1;
        });
        linalg::scale(&total, &q(1, count))
    }

    /// The operator of an element of `Λ𝔤` under the quantization map.
    pub fn multivector(&self, x: &Multivec) -> Mat {
        let size = self.size();
        let mut out = linalg::zeros(size, size);
        for (mask, c) in x.terms() {
            out = linalg::add(&out, &linalg::scale(&self.quantize_word(*mask), c));
        }
        out
    }

    /// Applies an element of `Λ𝔤` to a spinor.
    pub fn clifford_action(&self, x: &Multivec, s: &[Q]) -> Vec<Q> {
        linalg::mul_vec(&self.multivector(x), s)
    }

    /// The canonical pairing matrix `P[s][t] = ⟨s, t⟩`.
    ///
    /// `⟨S, T⟩` is the top coefficient of `S^t ∧ T`, where `S^t` reverses the word.
    pub fn pairing(&self) -> &Mat {
        &self.pairing
    }

    pub fn pair(&self, s: &[Q], t: &[Q]) -> Q {
        let pt = linalg::mul_vec(&self.pairing, t);
        s.iter().zip(&pt).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `exp(x)·s` for nilpotent Clifford action of `x`.
    pub fn clifford_exp(&self, x: &Multivec, s: &[Q]) -> Result<Vec<Q>, QlaError> {
        let m = self.multivector(x);
        exp_series(|v: &Vec<Q>| linalg::mul_vec(&m, v), &s.to_vec(), self.size())
    }

    /// Spinor lift of a skew endomorphism: `lift(A) = −½ q(ω_A)`, so `[lift(A), γ_r] = γ_{A r}`.
    pub fn lift(&self, g: &QuadraticLieAlgebra, a: &Mat) -> Result<Mat, QlaError> {
        let w = g.bivector_of_derivation(a)?;
        Ok(linalg::scale(&self.multivector(&w), &q(-1, 2)))
    }

    /// `lift(E_ij)` for each matrix unit, extended linearly by callers.
    pub fn lift_units(&self, g: &QuadraticLieAlgebra) -> Vec<Vec<Mat>> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut e = linalg::zeros(n, n);
                        e[i][j] = Q::one();
                        linalg::scale(&self.multivector(&g.bivector_linear(&e)), &q(-1, 2))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Visits each permutation of `items` with its sign.
fn for_each_permutation(items: &[usize], mut f: impl FnMut(&[usize], i32)) {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, sign: i32, f: &mut dyn FnMut(&[usize], i32)) {
        if rest.is_empty() {
            f(prefix, sign);
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            prefix.push(x);
            // Picking the k-th remaining element costs k transpositions.
            let s = if k % 2 == 0 { sign } else { -sign };
            rec(prefix, rest, s, f);
            prefix.pop();
            rest.insert(k, x);
        }
    }
    rec(&mut Vec::new(), &mut items.to_vec(), 1, &mut f);
}

/// A vector space over `Q` on which exponential series can be summed.
pub trait Linear: Clone {
    fn is_zero(&self) -> bool;
    fn scaled(&self, c: &Q) -> Self;
    fn add_assign(&mut self, other: &Self);
}

impl Linear for Vec<Q> {
    fn is_zero(&self) -> bool {
        self.iter().all(Zero::is_zero)
    }
    fn scaled(&self, c: &Q) -> Self {
        self.iter().map(|x| x * c).collect()
    }
    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b;
        }
    }
}

impl Linear for Vec<Vec<Q>> {
    fn is_zero(&self) -> bool {
        linalg::is_zero(self)
    }
    fn scaled(&self, c: &Q) -> Self {
        linalg::scale(self, c)
    }
    fn add_assign(&mut self, other: &Self) {
        *self = linalg::add(self, other);
    }
}

/// `Σ_p x^p s / p!` for a nilpotent operator `x`; at most `bound` nonzero powers are allowed.
pub fn exp_series<T: Linear>(x: impl Fn(&T) -> T, s: &T, bound: usize) -> Result<T, QlaError> {
    let mut sum = s.clone();
    let mut term = s.clone();
    for p in 1..=bound + 1 {
        if term.is_zero() {
            return Ok(sum);
        }
        term = x(&term).scaled(&q(1, p as i64));
        if p <= bound {
            sum.add_assign(&term);
        } else if !term.is_zero() {
            return Err(QlaError::NotNilpotent);
        }
    }
    Ok(sum)
}

/// `exp(m)` for a nilpotent square matrix.
pub fn mat_exp_nilpotent(m: &Mat) -> Result<Mat, QlaError> {
    let n = m.len();
    exp_series(|a: &Mat| linalg::mul(m, a), &linalg::identity(n), n)
}

/// `log(k)` for a unipotent square matrix, as a finite series in `k − 1`.
pub fn mat_log_unipotent(k: &Mat) -> Result<Mat, QlaError> {
    let n = k.len();
    let nil = linalg::sub(k, &linalg::identity(n));
    let mut power = nil.clone();
    let mut out = linalg::zeros(n, n);
    for p in 1..=n {
        let c = if p % 2 == 1 { q(1, p as i64) } else { q(-1, p as i64) };
        out = linalg::add(&out, &linalg::scale(&power, &c));
        power = linalg::mul(&power, &nil);
    }
    if !linalg::is_zero(&power) {
        return Err(QlaError::NotNilpotent);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_actions() {
        let g = QuadraticLieAlgebra::hyperbolic(1);
        let s = g.spinors().unwrap();
        let w = &g.witt_basis().unwrap().w[0];
        let wp = &g.witt_basis().unwrap().w_prime[0];
        let vac = vec![qi(1), qi(0)];
        assert_eq!(linalg::mul_vec(&s.gamma(w), &vac), vec![qi(0), qi(1)]);
        assert_eq!(linalg::mul_vec(&s.gamma(wp), &vac), vec![qi(0), qi(0)]);
    }

    #[test]
    fn pairing_of_hyperbolic_plane() {
        let g = QuadraticLieAlgebra::hyperbolic(1);
        let p = g.spinors().unwrap().pairing();
        assert_eq!(linalg::det(p), qi(-1));
        assert_eq!(p, &linalg::transpose(p));
    }

    #[test]
    fn exp_and_log_are_inverse_on_unipotents() {
        let k = vec![
            vec![qi(1), qi(2), qi(3)],
            vec![qi(0), qi(1), q(1, 2)],
            vec![qi(0), qi(0), qi(1)],
        ];
        let l = mat_log_unipotent(&k).unwrap();
        assert_eq!(mat_exp_nilpotent(&l).unwrap(), k);
        let rot = vec![vec![qi(0), qi(-1)], vec![qi(1), qi(0)]];
        assert_eq!(mat_exp_nilpotent(&rot).unwrap_err(), QlaError::NotNilpotent);
    }

    #[test]
    fn permutation_signs() {
        let mut seen = Vec::new();
        for_each_permutation(&[0, 1, 2], |p, s| seen.push((p.to_vec(), s)));
        assert_eq!(seen.len(), 6);
        assert!(seen.contains(&(vec![0, 1, 2], 1)));
        assert!(seen.contains(&(vec![1, 0, 2], -1)));
        assert!(seen.contains(&(vec![1, 2, 0], 1)));
        assert!(seen.contains(&(vec![2, 1, 0], -1)));
    }
}
