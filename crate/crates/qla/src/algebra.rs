use coeff_ring::{parse_rational, qi, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{self, Mat};
use crate::multivec::Multivec;
use crate::spinors::SpinorModule;
use crate::QlaError;

/// A pair of isotropic halves `W = span(w_j)`, `W′ = span(w′_j)` with `⟨w_i, w′_j⟩ = δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittBasis {
    pub w: Vec<Vec<Q>>,
    pub w_prime: Vec<Vec<Q>>,
}

/// A real Lie algebra with an invariant scalar product of neutral signature.
#[derive(Clone, Debug)]
pub struct QuadraticLieAlgebra {
    n: usize,
    /// `c[i][j][k]` is the `e_k` component of `[e_i, e_j]`.
    c: Vec<Vec<Vec<Q>>>,
    gram: Mat,
    gram_inv: Mat,
    witt: Option<WittBasis>,
    spinors: Option<SpinorModule>,
}

impl PartialEq for QuadraticLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.gram == other.gram && self.witt == other.witt
    }
}

impl QuadraticLieAlgebra {
    /// Validates the data and builds the Fock module when a Witt basis is known or derivable.
    pub fn new(
        c: Vec<Vec<Vec<Q>>>,
        gram: Mat,
        witt: Option<WittBasis>,
    ) -> Result<Self, QlaError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n)
            || c.len() != n
            || c.iter().any(|r| r.len() != n || r.iter().any(|s| s.len() != n))
        {
            return Err(QlaError::DimensionMismatch(format!(
                "structure constants and gram must be indexed by {n} basis vectors"
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(QlaError::GramNotSymmetric);
                }
                for k in 0..n {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(QlaError::NotAntisymmetric);
                    }
                }
            }
        }
        let gram_inv = linalg::inverse(&gram).ok_or(QlaError::Degenerate)?;
        let (pos, neg) = inertia(&gram);
        if pos != neg {
            return Err(QlaError::NotNeutral { pos, neg });
        }
        let mut g = Self {
            n,
            c,
            gram,
            gram_inv,
            witt: None,
            spinors: None,
        };
        if !g.jacobi_residual().iter().all(Zero::is_zero) {
            return Err(QlaError::JacobiFails);
        }
        if !g.invariance_residual().iter().all(Zero::is_zero) {
            return Err(QlaError::NotInvariant);
        }
        let witt = match witt {
            Some(w) => {
                g.validate_witt(&w)?;
                Some(w)
            }
            None => g.derive_witt(),
        };
        if let Some(w) = witt {
            g.spinors = Some(SpinorModule::new(&g, &w));
            g.witt = Some(w);
        }
        Ok(g)
    }

    /// The zero algebra.
    pub fn zero() -> Self {
        Self::new(Vec::new(), Vec::new(), None).expect("zero algebra is valid")
    }

    /// An abelian algebra with the given metric.
    pub fn abelian(gram: Mat) -> Result<Self, QlaError> {
        let n = gram.len();
        Self::new(vec![vec![vec![Q::zero(); n]; n]; n], gram, None)
    }

    /// The abelian algebra `ℝ^{h,h}` with Gram matrix a sum of `h` hyperbolic planes.
    pub fn hyperbolic(h: usize) -> Self {
        let mut gram = linalg::zeros(2 * h, 2 * h);
        for j in 0..h {
            gram[2 * j][2 * j + 1] = Q::one();
            gram[2 * j + 1][2 * j] = Q::one();
        }
        Self::abelian(gram).expect("hyperbolic metric is neutral")
    }

    /// `so(3) ⋉ so(3)*` in the basis `e_1, e_2, e_3, f_1, f_2, f_3` with
    /// `[e_i, e_j] = ε_ijk e_k`, `[e_i, f_j] = ε_ijk f_k` and `⟨e_i, f_j⟩ = δ_ij`.
    pub fn so3_ltimes_dual() -> Self {
        let mut c = vec![vec![vec![Q::zero(); 6]; 6]; 6];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[i][j][k] = qi(1);
            c[j][i][k] = qi(-1);
            c[i][3 + j][3 + k] = qi(1);
            c[3 + j][i][3 + k] = qi(-1);
            c[j][3 + i][3 + k] = qi(-1);
            c[3 + i][j][3 + k] = qi(1);
        }
        let mut gram = linalg::zeros(6, 6);
        for i in 0..3 {
            gram[i][3 + i] = Q::one();
            gram[3 + i][i] = Q::one();
        }
        Self::new(c, gram, None).expect("so(3) semidirect its dual is quadratic")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Half of the dimension; the Fock module has dimension `2^half_dim`.
    pub fn half_dim(&self) -> usize {
        self.n / 2
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Vec<Q>>> {
        &self.c
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[i][j][k]
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Mat {
        &self.gram_inv
    }

    pub fn witt_basis(&self) -> Option<&WittBasis> {
        self.witt.as_ref()
    }

    pub fn spinors(&self) -> Result<&SpinorModule, QlaError> {
        self.spinors.as_ref().ok_or(QlaError::NoWittBasis)
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.n];
        for i in 0..self.n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o += &uv * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn pair(&self, u: &[Q], v: &[Q]) -> Q {
        let mut out = Q::zero();
        for i in 0..self.n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if !v[j].is_zero() && !self.gram[i][j].is_zero() {
                    out += &u[i] * &v[j] * &self.gram[i][j];
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.n];
        v[i] = Q::one();
        v
    }

    /// The metric dual basis `ẽ_i = Σ_l g^{il} e_l`, so that `⟨ẽ_i, e_j⟩ = δ_ij`.
    pub fn dual_basis(&self) -> Vec<Vec<Q>> {
        self.gram_inv.clone()
    }

    /// Matrix of `ad_u`, with `ad_u[i][j]` the `e_i` component of `[u, e_j]`.
    pub fn ad(&self, u: &[Q]) -> Mat {
        let mut m = linalg::zeros(self.n, self.n);
        for (k, uk) in u.iter().enumerate() {
            if uk.is_zero() {
                continue;
            }
            for j in 0..self.n {
                for i in 0..self.n {
                    if !self.c[k][j][i].is_zero() {
                        m[i][j] += uk * &self.c[k][j][i];
                    }
                }
            }
        }
        m
    }

    /// `ad_{e_k}` for each basis vector.
    pub fn ad_basis(&self) -> Vec<Mat> {
        (0..self.n).map(|k| self.ad(&self.basis_vector(k))).collect()
    }

    /// All components of `[[e_i,e_j],e_k] + cyclic`.
    pub fn jacobi_residual(&self) -> Vec<Q> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let t1 = self.bracket(&self.bracket(&a, &b), &c);
                    let t2 = self.bracket(&self.bracket(&b, &c), &a);
                    let t3 = self.bracket(&self.bracket(&c, &a), &b);
                    out.extend((0..n).map(|l| &t1[l] + &t2[l] + &t3[l]));
                }
            }
        }
        out
    }

    /// All values `⟨[e_i,e_j],e_k⟩ + ⟨e_j,[e_i,e_k]⟩`.
    pub fn invariance_residual(&self) -> Vec<Q> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            let ad = self.ad(&self.basis_vector(i));
            out.extend(skew_residual(&ad, &self.gram).into_iter().flatten());
        }
        out
    }

    /// `C(e_i, e_j, e_k) = ⟨[e_i, e_j], e_k⟩`.
    pub fn cartan_component(&self, i: usize, j: usize, k: usize) -> Q {
        (0..self.n).fold(Q::zero(), |acc, l| acc + &self.c[i][j][l] * &self.gram[l][k])
    }

    /// The Cartan 3-form `Σ_{i<j<k} C_ijk ẽ_i ∧ ẽ_j ∧ ẽ_k` as an element of `Λ³𝔤`.
    pub fn cartan_form(&self) -> Multivec {
        let dual: Vec<Multivec> = self.dual_basis().iter().map(|v| Multivec::vector(v)).collect();
        let mut out = Multivec::zero(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let cijk = self.cartan_component(i, j, k);
                    if cijk.is_zero() {
                        continue;
                    }
                    let w = dual[i].wedge(&dual[j]).wedge(&dual[k]);
                    out = out.add(&w.scale(&cijk));
                }
            }
        }
        out
    }

    pub fn is_skew(&self, a: &Mat) -> bool {
        linalg::is_zero(&skew_residual(a, &self.gram))
    }

    /// Components of `A[e_i,e_j] − [Ae_i,e_j] − [e_i,Ae_j]`.
    pub fn derivation_residual(&self, a: &Mat) -> Vec<Q> {
        let n = self.n;
        let col = |j: usize| -> Vec<Q> { (0..n).map(|i| a[i][j].clone()).collect() };
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let bij = self.bracket(&self.basis_vector(i), &self.basis_vector(j));
                let lhs = linalg::mul_vec(a, &bij);
                let r1 = self.bracket(&col(i), &self.basis_vector(j));
                let r2 = self.bracket(&self.basis_vector(i), &col(j));
                out.extend((0..n).map(|k| &lhs[k] - &r1[k] - &r2[k]));
            }
        }
        out
    }

    /// The Lie-algebra bivector `ω_A = ½ Σ ẽ_i ∧ A(e_i)`.
    ///
    /// It satisfies `A(r) = −½[q(ω_A), r]` in the Clifford algebra.
    pub fn bivector_of_derivation(&self, a: &Mat) -> Result<Multivec, QlaError> {
        if !self.is_skew(a) {
            return Err(QlaError::NotSkew);
        }
        Ok(self.bivector_linear(a))
    }

    /// The same formula without the skewness check; linear in `a`.
    pub fn bivector_linear(&self, a: &Mat) -> Multivec {
        let dual = self.dual_basis();
        let mut out = Multivec::zero(self.n);
        for i in 0..self.n {
            let ae: Vec<Q> = (0..self.n).map(|k| a[k][i].clone()).collect();
            out = out.add(&Multivec::vector(&dual[i]).wedge(&Multivec::vector(&ae)));
        }
        out.scale(&coeff_ring::q(1, 2))
    }

    /// A basis of the space of skew derivations, each as an `n × n` matrix.
    pub fn skew_derivation_basis(&self) -> Vec<Mat> {
        let n = self.n;
        let nn = n * n;
        let mut rows: Mat = Vec::new();
        // Unknown `A[p][q]` sits at index `p*n + q`.
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let mut row = vec![Q::zero(); nn];
                    for l in 0..n {
                        row[k * n + l] += &self.c[i][j][l];
                        // [A e_i, e_j]^k = Σ_p A[p][i] c[p][j][k]
                        row[l * n + i] -= &self.c[l][j][k];
                        row[l * n + j] -= &self.c[i][l][k];
                    }
                    rows.push(row);
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                // ⟨A e_i, e_j⟩ + ⟨e_i, A e_j⟩ = Σ_p A[p][i] g[p][j] + A[p][j] g[i][p]
                let mut row = vec![Q::zero(); nn];
                for p in 0..n {
                    row[p * n + i] += &self.gram[p][j];
                    row[p * n + j] += &self.gram[i][p];
                }
                rows.push(row);
            }
        }
        linalg::nullspace(&rows, nn)
            .into_iter()
            .map(|v| v.chunks(n.max(1)).map(<[Q]>::to_vec).collect())
            .collect()
    }

    /// `ad : 𝔤 → Der_skew(𝔤)` as an `n² × n` matrix.
    fn ad_matrix(&self) -> Mat {
        let n = self.n;
        let mut a = linalg::zeros(n * n, n);
        for (k, ad) in self.ad_basis().iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    a[i * n + j][k] = ad[i][j].clone();
                }
            }
        }
        a
    }

    /// Whether `ad` is an isomorphism onto the skew derivations.
    pub fn ad_is_iso(&self) -> bool {
        let n = self.n;
        linalg::rank(&self.ad_matrix()) == n && self.skew_derivation_basis().len() == n
    }

    /// A left inverse `L` (`n × n²`) of `ad`: `Σ_{ij} L[k][i·n+j] ad_u[i][j] = u_k`.
    pub fn ad_left_inverse(&self) -> Result<Mat, QlaError> {
        let a = self.ad_matrix();
        let at = linalg::transpose(&a);
        let ata_inv = linalg::inverse(&linalg::mul(&at, &a)).ok_or(QlaError::AdNotInjective)?;
        Ok(linalg::mul(&ata_inv, &at))
    }

    fn validate_witt(&self, w: &WittBasis) -> Result<(), QlaError> {
        let h = self.n / 2;
        if w.w.len() != h
            || w.w_prime.len() != h
            || w.w.iter().chain(&w.w_prime).any(|v| v.len() != self.n)
        {
            return Err(QlaError::BadWittBasis("wrong shape".into()));
        }
        for i in 0..h {
            for j in 0..h {
                if !self.pair(&w.w[i], &w.w[j]).is_zero()
                    || !self.pair(&w.w_prime[i], &w.w_prime[j]).is_zero()
                {
                    return Err(QlaError::BadWittBasis("halves are not isotropic".into()));
                }
                let expect = if i == j { Q::one() } else { Q::zero() };
                if self.pair(&w.w[i], &w.w_prime[j]) != expect {
                    return Err(QlaError::BadWittBasis("halves are not dual".into()));
                }
            }
        }
        Ok(())
    }

    /// Greedy rational Witt decomposition: split off one hyperbolic plane at a time.
    fn derive_witt(&self) -> Option<WittBasis> {
        let mut space: Vec<Vec<Q>> = (0..self.n).map(|i| self.basis_vector(i)).collect();
        let mut w = Vec::new();
        let mut w_prime = Vec::new();
        while !space.is_empty() {
            let u = self.find_isotropic(&space)?;
            let y = space.iter().find(|y| !self.pair(&u, y).is_zero())?.clone();
            let uy = self.pair(&u, &y);
            let yy = self.pair(&y, &y);
            let shift = &yy / (&uy * qi(2));
            let wp: Vec<Q> = y.iter().zip(&u).map(|(a, b)| (a - &shift * b) / &uy).collect();
            // Project the remaining span onto the complement of span(u, wp).
            let mut rest = Vec::new();
            for v in &space {
                let a = self.pair(v, &wp);
                let b = self.pair(v, &u);
                let p: Vec<Q> = (0..self.n).map(|i| &v[i] - &a * &u[i] - &b * &wp[i]).collect();
                rest.push(p);
            }
            space = independent_subset(rest);
            w.push(u);
            w_prime.push(wp);
        }
        Some(WittBasis { w, w_prime })
    }

    fn find_isotropic(&self, space: &[Vec<Q>]) -> Option<Vec<Q>> {
        for v in space {
            if self.pair(v, v).is_zero() && space.iter().any(|y| !self.pair(v, y).is_zero()) {
                return Some(v.clone());
            }
        }
        for (i, a) in space.iter().enumerate() {
            for b in &space[i + 1..] {
                for sign in [1, -1] {
                    let v: Vec<Q> = a.iter().zip(b).map(|(x, y)| x + y * qi(sign)).collect();
                    if self.pair(&v, &v).is_zero() && space.iter().any(|y| !self.pair(&v, y).is_zero())
                    {
                        return Some(v);
                    }
                }
            }
        }
        None
    }

    pub fn to_doc(&self) -> QlaDoc {
        let mut c = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in 0..self.n {
                    if !self.c[i][j][k].is_zero() {
                        c.push((i, j, k, self.c[i][j][k].to_string()));
                    }
                }
            }
        }
        let strings = |m: &Mat| -> Vec<Vec<String>> {
            m.iter().map(|r| r.iter().map(Q::to_string).collect()).collect()
        };
        QlaDoc {
            dim: self.n,
            c,
            gram: strings(&self.gram),
            witt: self.witt.as_ref().map(|w| WittDoc {
                w: strings(&w.w),
                w_prime: strings(&w.w_prime),
            }),
        }
    }

    pub fn from_doc(doc: &QlaDoc) -> Result<Self, QlaError> {
        let n = doc.dim;
        let parse = |m: &Vec<Vec<String>>| -> Result<Mat, QlaError> {
            m.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_rational(s).map_err(|e| QlaError::Parse(e.to_string())))
                        .collect()
                })
                .collect()
        };
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, j, k, s) in &doc.c {
            if *i >= n || *j >= n || *k >= n || i >= j {
                return Err(QlaError::Parse(format!("bad structure index ({i},{j},{k})")));
            }
            let v = parse_rational(s).map_err(|e| QlaError::Parse(e.to_string()))?;
            c[*i][*j][*k] = v.clone();
            c[*j][*i][*k] = -v;
        }
        let gram = parse(&doc.gram)?;
        if gram.len() != n {
            return Err(QlaError::DimensionMismatch("gram size differs from dim".into()));
        }
        let witt = match &doc.witt {
            Some(w) => Some(WittBasis {
                w: parse(&w.w)?,
                w_prime: parse(&w.w_prime)?,
            }),
            None => None,
        };
        Self::new(c, gram, witt)
    }
}

/// `Aᵀ G + G A`, whose vanishing means `A` is skew for `G`.
fn skew_residual(a: &Mat, g: &Mat) -> Mat {
    let ga = linalg::mul(g, a);
    linalg::add(&linalg::transpose(&ga), &ga)
}

/// Numbers of positive and negative squares of a symmetric matrix.
pub fn inertia(g: &Mat) -> (usize, usize) {
    let n = g.len();
    let mut m = g.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        let pivot = alive.iter().copied().find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // No diagonal pivot: replace e_i by e_i + e_j for some g_ij ≠ 0.
                let Some((i, j)) = alive
                    .iter()
                    .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_zero())
                else {
                    break;
                };
                for k in 0..n {
                    let v = m[j][k].clone();
                    m[i][k] += v;
                }
                for k in 0..n {
                    let v = m[k][j].clone();
                    m[k][i] += v;
                }
                i
            }
        };
        let d = m[p][p].clone();
        if d > Q::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        alive.retain(|&i| i != p);
        for &i in &alive {
            let f = &m[i][p] / &d;
            if f.is_zero() {
                continue;
            }
            for k in 0..n {
                let v = &f * &m[p][k];
                m[i][k] -= v;
            }
            for k in 0..n {
                let v = &f * &m[k][p];
                m[k][i] -= v;
            }
        }
    }
    (pos, neg)
}

fn independent_subset(vs: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut kept: Vec<Vec<Q>> = Vec::new();
    for v in vs {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if linalg::rank(&trial) == trial.len() {
            kept = trial;
        }
    }
    kept
}

/// JSON shape of a quadratic Lie algebra; `c` lists `[i, j, k, value]` for `i < j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QlaDoc {
    pub dim: usize,
    pub c: Vec<(usize, usize, usize, String)>,
    pub gram: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witt: Option<WittDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WittDoc {
    pub w: Vec<Vec<String>>,
    #[serde(rename = "wPrime")]
    pub w_prime: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        let g = QuadraticLieAlgebra::so3_ltimes_dual();
        assert_eq!(g.dim(), 6);
        assert!(g.jacobi_residual().iter().all(Zero::is_zero));
        assert!(g.witt_basis().is_some());
        assert!(g.ad_is_iso());
        let z = QuadraticLieAlgebra::zero();
        assert!(z.ad_is_iso());
        assert!(!QuadraticLieAlgebra::hyperbolic(1).ad_is_iso());
    }

    #[test]
    fn rejects_bad_data() {
        let pos = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        assert!(matches!(
            QuadraticLieAlgebra::abelian(pos),
            Err(QlaError::NotNeutral { pos: 2, neg: 0 })
        ));
        let degen = vec![vec![qi(0), qi(0)], vec![qi(0), qi(0)]];
        assert_eq!(QuadraticLieAlgebra::abelian(degen).unwrap_err(), QlaError::Degenerate);
        // A bracket on the hyperbolic plane that is not invariant.
        let mut c = vec![vec![vec![Q::zero(); 2]; 2]; 2];
        c[0][1][0] = qi(1);
        c[1][0][0] = qi(-1);
        let gram = QuadraticLieAlgebra::hyperbolic(1).gram().clone();
        assert_eq!(
            QuadraticLieAlgebra::new(c, gram, None).unwrap_err(),
            QlaError::NotInvariant
        );
    }

    #[test]
    fn diagonal_metric_gets_witt_basis() {
        let g = QuadraticLieAlgebra::abelian(vec![
            vec![qi(1), qi(0), qi(0), qi(0)],
            vec![qi(0), qi(-1), qi(0), qi(0)],
            vec![qi(0), qi(0), qi(3), qi(0)],
            vec![qi(0), qi(0), qi(0), qi(-3)],
        ])
        .unwrap();
        assert!(g.witt_basis().is_some());
        assert_eq!(inertia(g.gram()), (2, 2));
    }

    #[test]
    fn json_round_trip() {
        let g = QuadraticLieAlgebra::so3_ltimes_dual();
        let s = serde_json::to_string(&g.to_doc()).unwrap();
        let back = QuadraticLieAlgebra::from_doc(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn ad_left_inverse_recovers_vector() {
        let g = QuadraticLieAlgebra::so3_ltimes_dual();
        let l = g.ad_left_inverse().unwrap();
        let u: Vec<Q> = (1..=6).map(|k| qi(k * k - 3)).collect();
        let ad = g.ad(&u);
        let flat: Vec<Q> = ad.into_iter().flatten().collect();
        assert_eq!(linalg::mul_vec(&l, &flat), u);
    }
}
