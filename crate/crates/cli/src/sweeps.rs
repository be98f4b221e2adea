//! Deterministic randomised sweeps with brute-force oracles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use surfdyn::abelian::{
    exe_lattice, is_ample, line_class, line_volumes, minkowski_chain_check, ns_pairing, RealScalar, ScalarField,
};
use surfdyn::birational::BirationalSelfMap;
use surfdyn::exact::{frac, IntMatrix, Precision};
use surfdyn::lattice::{classify_isometry, construct_hyperbolic_isometry, GramLattice, LatticeClass};
use surfdyn::surfaces::{InvolutionModel, Surface222Model, WehlerModel};

use crate::Result;

#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 10 {
            self.failures.push(msg);
        }
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{} cases", self.cases)
        } else {
            format!("{} cases, first failures: {}", self.cases, self.failures.join("; "))
        }
    }
}

fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let r: Vec<&[i64]> = rows.iter().map(|v| v.as_slice()).collect();
    IntMatrix::from_i64(&r)
}

fn dot(g: &[Vec<i64>], u: &[i64], v: &[i64]) -> i64 {
    let n = u.len();
    (0..n).map(|i| (0..n).map(|j| u[i] * g[i][j] * v[j]).sum::<i64>()).sum()
}

/// `x ↦ x - 2 (x·v)/(v·v) v` when integral.
fn reflection(g: &[Vec<i64>], v: &[i64]) -> Option<IntMatrix> {
    let n = v.len();
    let vv = dot(g, v, v);
    if vv == 0 || 2 % vv != 0 {
        return None;
    }
    let gv: Vec<i64> = (0..n).map(|j| (0..n).map(|k| g[j][k] * v[k]).sum()).collect();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j) - 2 * v[i] * gv[j] / vv).collect())
        .collect();
    Some(int_matrix(&rows))
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    for _ in 0..rng.gen_range(1..=4) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        // column operation col_i += s col_j
        for r in 0..n {
            let v = &p[(r, i)] + &p[(r, j)] * BigInt::from(s);
            p[(r, i)] = v;
        }
    }
    p
}

fn word_isometry(rng: &mut ChaCha8Rng, model: &dyn InvolutionModel) -> IntMatrix {
    let k = model.generators().len();
    let len = rng.gen_range(1..=5);
    let mut m = IntMatrix::identity(model.lattice().rank());
    for _ in 0..len {
        m = &m * &model.generators()[rng.gen_range(0..k)];
    }
    m
}

fn reflection_isometry(rng: &mut ChaCha8Rng, g: &[Vec<i64>]) -> IntMatrix {
    let n = g.len();
    let mut m = IntMatrix::identity(n);
    let steps = rng.gen_range(1..=6);
    let mut done = 0;
    while done < steps {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        if let Some(r) = reflection(g, &v) {
            m = &m * &r;
            done += 1;
        }
    }
    m
}

/// A random lattice of signature `(1, r - 1)`, `r ≤ 4`, in a random basis,
/// together with an isometry preserving the positive cone.
pub fn random_isometry(rng: &mut ChaCha8Rng) -> Result<(GramLattice, IntMatrix)> {
    loop {
        let (gram, m): (Vec<Vec<i64>>, IntMatrix) = match rng.gen_range(0..6) {
            0 => {
                let a = rng.gen_range(1..=3);
                let b = rng.gen_range(0..=3);
                let c = -rng.gen_range(1..=3);
                let g = vec![vec![2 * a, b], vec![b, 2 * c]];
                let Ok(l) = GramLattice::new(int_matrix(&g)) else { continue };
                let Ok(iso) = construct_hyperbolic_isometry(&l) else { continue };
                let m = if rng.gen_bool(0.5) { iso.matrix.clone() } else { iso.inverse()?.matrix };
                (g, m)
            }
            1 => {
                let model = Surface222Model::new();
                (vec![vec![0, 2, 2], vec![2, 0, 2], vec![2, 2, 0]], word_isometry(rng, &model))
            }
            2 => {
                let model = WehlerModel::new();
                let g = model.lattice().gram().to_rows();
                let g = g.iter().map(|r| r.iter().map(|x| i64::try_from(x).expect("small")).collect()).collect();
                (g, word_isometry(rng, &model))
            }
            k => {
                let r = rng.gen_range(2..=4);
                let g: Vec<Vec<i64>> = if k == 3 || r == 2 {
                    (0..r).map(|i| (0..r).map(|j| if i != j { 0 } else if i == 0 { 1 } else { -1 }).collect()).collect()
                } else {
                    (0..r)
                        .map(|i| {
                            (0..r)
                                .map(|j| match (i, j) {
                                    (0, 1) | (1, 0) => 1,
                                    (i, j) if i == j && i >= 2 => -2,
                                    _ => 0,
                                })
                                .collect()
                        })
                        .collect()
                };
                let m = reflection_isometry(rng, &g);
                (g, m)
            }
        };
        let n = gram.len();
        let p = random_unimodular(rng, n);
        let pinv = p.inverse()?;
        let g2 = &(&p.transpose() * &int_matrix(&gram)) * &p;
        let m2 = &(&pinv * &m) * &p;
        let l = GramLattice::new(g2)?;
        let h = l.positive_class().clone();
        let m2 = if l.pair(&h.apply(&m2), &h).is_negative() { -&m2 } else { m2 };
        return Ok((l, m2));
    }
}

/// Gram preservation and `classify(M) = classify(M⁻¹)`.
pub fn isometry_sweep(count: usize, seed: u64) -> Result<SweepOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SweepOutcome::default();
    for case in 0..count {
        let (l, m) = random_isometry(&mut rng)?;
        out.cases += 1;
        if l.check_isometry(&m).is_err() {
            out.fail(format!("case {case}: Gram matrix not preserved"));
            continue;
        }
        let minv = m.inverse()?;
        if l.check_isometry(&minv).is_err() {
            out.fail(format!("case {case}: inverse does not preserve the Gram matrix"));
            continue;
        }
        let a = classify_isometry(&m, &l)?;
        let b = classify_isometry(&minv, &l)?;
        let same = a.kind == b.kind
            && a.lambda.same_as(&b.lambda)
            && a.lambda_min_poly == b.lambda_min_poly
            && a.eigen_sign == b.eigen_sign;
        if !same {
            out.fail(format!("case {case}: {} vs {}", a.kind, b.kind));
        }
    }
    Ok(out)
}

/// `∫ ω_B ∧ ω_C` for `ω_B = Σ b_ij dxᵢ ∧ dy_j`, oriented by
/// `dx₁ ∧ dy₁ ∧ dx₂ ∧ dy₂`, by summing over all permutations.
pub fn wedge_oracle(b: &[[i64; 2]; 2], c: &[[i64; 2]; 2]) -> i64 {
    // coordinates 0 = x₁, 1 = y₁, 2 = x₂, 3 = y₂
    let form = |m: &[[i64; 2]; 2]| {
        let mut a = [[0i64; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                let (x, y) = (2 * i, 2 * j + 1);
                a[x][y] += m[i][j];
                a[y][x] -= m[i][j];
            }
        }
        a
    };
    let (a, a2) = (form(b), form(c));
    let mut total = 0;
    for s in permutations4() {
        total += perm_sign(&s) * a[s[0]][s[1]] * a2[s[2]][s[3]];
    }
    // ω = ½ Σ a_ij eⁱ ∧ eʲ for both factors
    total / 4
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let s = [a, b, c, d];
                    if (0..4).all(|k| s.contains(&k)) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

fn perm_sign(s: &[usize; 4]) -> i64 {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if s[i] > s[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Pairing against the wedge oracle for all `B, C` with entries in
/// `[-bound, bound]`.
pub fn pairing_sweep(bound: i64) -> SweepOutcome {
    let mut mats = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    let m = [[a, b], [c, d]];
                    mats.push((m, IntMatrix::from_i64(&[&[a, b], &[c, d]])));
                }
            }
        }
    }
    let mut out = SweepOutcome::default();
    for (m1, b1) in &mats {
        for (m2, b2) in &mats {
            out.cases += 1;
            let got = ns_pairing(b1, b2);
            let want = wedge_oracle(m1, m2);
            if got != BigInt::from(want) {
                out.fail(format!("{m1:?}·{m2:?}: {got} vs {want}"));
            }
        }
    }
    out
}

/// `#(L_{a,b} ∩ L_{c,d})` on `E × E` for distinct lines, counted by
/// enumerating torsion points of `ℝ/ℤ` and squaring for `E = ℝ²/Λ`.
pub fn line_intersection_oracle(a: i64, b: i64, c: i64, d: i64) -> u64 {
    // L_{a,b} = {(b z, a z)}; a common point needs b s = d t, a s = c t
    let n = (a * d - b * c).unsigned_abs() as i64;
    assert!(n > 0, "distinct lines");
    let mut count = 0u64;
    for i in 0..n {
        for j in 0..n {
            if (b * i - d * j).mod_floor(&n) == 0 && (a * i - c * j).mod_floor(&n) == 0 {
                count += 1;
            }
        }
    }
    count * count
}

fn coprime_pairs(max: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for a in -max..=max {
        for b in 0..=max {
            if a.gcd(&b) == 1 && !(b == 0 && a < 0) {
                v.push((a, b));
            }
        }
    }
    v
}

/// Line classes against the intersection oracle and exact volume ratios.
pub fn line_sweep(max: i64, ys: &[RealScalar]) -> Result<SweepOutcome> {
    let l = exe_lattice();
    let pairs = coprime_pairs(max);
    let mut out = SweepOutcome::default();
    for &(a, b) in &pairs {
        let la = line_class(a, b)?;
        for &(c, d) in &pairs {
            out.cases += 1;
            let got = l.pair(&la, &line_class(c, d)?);
            let want = if (a, b) == (c, d) {
                BigInt::zero()
            } else {
                BigInt::from(line_intersection_oracle(a, b, c, d))
            };
            if got != want {
                out.fail(format!("L({a},{b})·L({c},{d}) = {got}, oracle {want}"));
            }
        }
        for y in ys {
            out.cases += 1;
            let v = line_volumes(a, b, y)?;
            if v.ratio_squared_times_y(y) != Some(BigRational::one()) {
                out.fail(format!("volume ratio of L({a},{b}) at y = {y}"));
            }
        }
    }
    Ok(out)
}

pub fn random_ample_classes(count: usize, seed: u64) -> Result<Vec<LatticeClass>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = LatticeClass::from_i64(&[
            rng.gen_range(-30..=30),
            rng.gen_range(-30..=30),
            rng.gen_range(-30..=30),
        ]);
        if !c.is_zero() && is_ample(&c)? {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn minkowski_sweep(count: usize, seed: u64, y: &RealScalar, field: &ScalarField, p: Precision) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for c in random_ample_classes(count, seed)? {
        out.cases += 1;
        let ch = minkowski_chain_check(&c, y, field, p)?;
        if !ch.holds {
            out.fail(format!("chain fails on {:?}", c.coords));
        }
    }
    Ok(out)
}

/// `g₂`, the twist `R_t` with `t = (1/3, 1/7)`, and the swap.
pub fn birational_generators() -> Result<Vec<(&'static str, BirationalSelfMap)>> {
    Ok(vec![
        ("g2", BirationalSelfMap::g_n(2, 1)?),
        ("R_t", BirationalSelfMap::twist(&frac(1, 3), &frac(1, 7))),
        ("swap", BirationalSelfMap::swap()),
    ])
}

/// Reduction idempotence and associativity over all ordered triples.
pub fn birational_sweep() -> Result<SweepOutcome> {
    let gens = birational_generators()?;
    let mut out = SweepOutcome::default();
    for (na, a) in &gens {
        for (nb, b) in &gens {
            for (nc, c) in &gens {
                out.cases += 1;
                let left = a.compose(b)?.compose(c)?;
                let right = a.compose(&b.compose(c)?)?;
                if left.components() != right.components() {
                    out.fail(format!("({na}∘{nb})∘{nc} ≠ {na}∘({nb}∘{nc})"));
                }
                for comp in left.components() {
                    if &comp.reduce()? != comp {
                        out.fail(format!("reduction of ({na}∘{nb})∘{nc} not idempotent"));
                    }
                }
                // f ∘ f⁻¹ = id
                if !left.undoes(&left.inverse()?) || !left.inverse()?.undoes(&left) {
                    out.fail(format!("({na}∘{nb})∘{nc} against its inverse"));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_oracle_on_basis() {
        let id = [[1, 0], [0, 1]];
        assert_eq!(wedge_oracle(&id, &id), 2);
        assert_eq!(wedge_oracle(&[[0, 1], [0, 0]], &[[0, 0], [1, 0]]), -1);
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(line_intersection_oracle(1, 0, 0, 1), 1);
        assert_eq!(line_intersection_oracle(2, 1, 0, 1), 4);
        assert_eq!(line_intersection_oracle(2, 1, 1, 1), 1);
    }

    #[test]
    fn random_isometries_are_isometries() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let (l, m) = random_isometry(&mut rng).unwrap();
            l.check_isometry(&m).unwrap();
        }
    }
}
