//! Reference computations on nalgebra, independent of the crate's own
//! eigensolver and dephasing code.
#![allow(dead_code)]

pub mod identities;

use diagdisc::linalg::{ComplexMatrix, C64};
use nalgebra::{DMatrix, SymmetricEigen};

pub type NMat = DMatrix<C64>;

pub fn to_na(m: &ComplexMatrix) -> NMat {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

pub fn from_na(m: &NMat) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigenvalues ascending and matching eigenvector columns.
pub fn eig(m: &NMat) -> (Vec<f64>, NMat) {
    let e = SymmetricEigen::new(m.clone());
    let mut idx: Vec<usize> = (0..m.nrows()).collect();
    idx.sort_by(|&a, &b| e.eigenvalues[a].partial_cmp(&e.eigenvalues[b]).unwrap());
    let vals = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let vecs = NMat::from_fn(m.nrows(), m.ncols(), |r, c| e.eigenvectors[(r, idx[c])]);
    (vals, vecs)
}

/// Entropy in bits.
pub fn entropy(m: &NMat) -> f64 {
    eig(m)
        .0
        .iter()
        .filter(|&&l| l > 1e-15)
        .map(|&l| -l * l.log2())
        .sum()
}

pub fn ptrace_b(m: &NMat, da: usize, db: usize) -> NMat {
    NMat::from_fn(da, da, |i, j| {
        (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()
    })
}

pub fn ptrace_a(m: &NMat, da: usize, db: usize) -> NMat {
    NMat::from_fn(db, db, |i, j| {
        (0..da).map(|k| m[(k * db + i, k * db + j)]).sum()
    })
}

pub fn kron(a: &NMat, b: &NMat) -> NMat {
    a.kronecker(b)
}

/// `Σ_i (P_i ⊗ I) m (P_i ⊗ I)` over the eigenprojectors of `ρ_A`.
pub fn dephase_a(m: &NMat, da: usize, db: usize) -> NMat {
    let (_, v) = eig(&ptrace_b(m, da, db));
    let id_b = NMat::identity(db, db);
    let mut out = NMat::zeros(da * db, da * db);
    for i in 0..da {
        let col = v.column(i).into_owned();
        let p = kron(&(&col * col.adjoint()), &id_b);
        out += &p * m * &p;
    }
    out
}

pub fn diagonal_discord(m: &NMat, da: usize, db: usize) -> f64 {
    entropy(&dephase_a(m, da, db)) - entropy(m)
}

/// `S(ρ || σ)` in bits, assuming `σ` has full support on `ρ`'s support.
pub fn relative_entropy(rho: &NMat, sigma: &NMat) -> f64 {
    let (vals, vecs) = eig(sigma);
    let log_sigma = &vecs
        * NMat::from_diagonal(&nalgebra::DVector::from_iterator(
            vals.len(),
            vals.iter()
                .map(|&l| C64::new(if l > 1e-15 { l.log2() } else { 0.0 }, 0.0)),
        ))
        * vecs.adjoint();
    -entropy(rho) - (rho * log_sigma).trace().re
}

/// Two-qubit discord by exhaustive search over measurement directions
/// `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>` on a `n_theta x n_phi` grid.
pub fn brute_force_discord_2q(m: &NMat, n_theta: usize, n_phi: usize) -> f64 {
    let s_a = entropy(&ptrace_b(m, 2, 2));
    let s_ab = entropy(m);
    let id_b = NMat::identity(2, 2);
    let mut best = f64::INFINITY;
    for it in 0..=n_theta {
        let theta = std::f64::consts::PI * it as f64 / n_theta as f64;
        for ip in 0..n_phi {
            let phi = 2.0 * std::f64::consts::PI * ip as f64 / n_phi as f64;
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let up = NMat::from_column_slice(2, 1, &[C64::new(c, 0.0), C64::from_polar(s, phi)]);
            let down =
                NMat::from_column_slice(2, 1, &[C64::from_polar(-s, -phi), C64::new(c, 0.0)]);
            let mut cond = 0.0;
            for v in [up, down] {
                let p = kron(&(&v * v.adjoint()), &id_b);
                let post = ptrace_a(&(&p * m * &p), 2, 2);
                let prob = post.trace().re;
                if prob > 1e-14 {
                    cond += prob * entropy(&(post / C64::new(prob, 0.0)));
                }
            }
            best = best.min(cond);
        }
    }
    s_a - s_ab + best
}

/// Werner-type state `z |Φ+><Φ+| + (1 - z) I/4`.
pub fn werner(z: f64) -> NMat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let phi = NMat::from_column_slice(
        4,
        1,
        &[
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
        ],
    );
    (&phi * phi.adjoint()) * C64::new(z, 0.0)
        + NMat::identity(4, 4) * C64::new((1.0 - z) / 4.0, 0.0)
}

/// Closed-form discord of [`werner`] states.
pub fn werner_discord(z: f64) -> f64 {
    let f = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    0.25 * (f(1.0 - z) - 2.0 * f(1.0 + z) + f(1.0 + 3.0 * z))
}

/// Real Gell-Mann-type generators of SU(4) needed for symmetric X-states,
/// written out entry by entry.
pub fn x_state_matrix(r6: f64, r8: f64, r9: f64, r15: f64) -> nalgebra::Matrix4<f64> {
    use nalgebra::Matrix4;
    let l3 = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, 0.0, 0.0));
    let mut l6 = Matrix4::zeros();
    l6[(1, 2)] = 1.0;
    l6[(2, 1)] = 1.0;
    let l8 = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, -2.0, 0.0)) / 3f64.sqrt();
    let mut l9 = Matrix4::zeros();
    l9[(0, 3)] = 1.0;
    l9[(3, 0)] = 1.0;
    let l15 = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -3.0)) / 6f64.sqrt();
    let sum = l3 * (3f64.sqrt() * r8) + l6 * r6 + l8 * r8 + l9 * r9 + l15 * r15;
    (Matrix4::identity() + sum * 6f64.sqrt()) / 4.0
}

pub fn x_state_admissible(r6: f64, r8: f64, r9: f64, r15: f64) -> bool {
    if r6 * r6 + 4.0 * r8 * r8 + r9 * r9 + r15 * r15 > 1.0 {
        return false;
    }
    let e = nalgebra::SymmetricEigen::new(x_state_matrix(r6, r8, r9, r15));
    e.eigenvalues.min() >= 0.0
}

/// Fraction of `n` uniform points of `[-1, 1]^4` that give admissible X-states.
pub fn x_state_volume_fraction(n: usize, seed: u64) -> f64 {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..n {
        let r: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        if x_state_admissible(r[0], r[1], r[2], r[3]) {
            hits += 1;
        }
    }
    hits as f64 / n as f64
}

/// Reduced operator of `party` in an operator on `⊗_k C^{dims[k]}`.
pub fn reduce(m: &NMat, dims: &[usize], party: usize) -> NMat {
    let n: usize = dims.iter().product();
    let digits = |mut idx: usize| {
        let mut out = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            out[k] = idx % dims[k];
            idx /= dims[k];
        }
        out
    };
    let d = dims[party];
    let mut out = NMat::zeros(d, d);
    for r in 0..n {
        let dr = digits(r);
        for c in 0..n {
            let dc = digits(c);
            if (0..dims.len()).all(|k| k == party || dr[k] == dc[k]) {
                out[(dr[party], dc[party])] += m[(r, c)];
            }
        }
    }
    out
}
