//! Seeded random instances compared against the dense oracle.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ulrich_core::oracle;
use ulrich_core::{AlgebraError, AmbientRing, Matrix, ModuleData, Monomial, Poly, PrimeField, Vector};

pub const BASE_SEED: u64 = 0x5eed_0001;
pub const D_MAX: usize = 16;
const NAMES: [&str; 3] = ["x", "y", "z"];

#[derive(Clone, Debug)]
pub struct InstanceOutcome {
    pub seed: u64,
    pub description: String,
    pub length: (Option<u64>, Option<u64>),
    pub colon_length: (Option<u64>, Option<u64>),
    pub syzygies_agree: bool,
    pub artinian_length: Option<u64>,
    pub free: (bool, Option<bool>),
}

impl InstanceOutcome {
    pub fn agrees(&self) -> bool {
        self.length.0 == self.length.1
            && self.length.0.is_some()
            && self.colon_length.0 == self.colon_length.1
            && self.syzygies_agree
            && self.artinian_length.is_some_and(|l| l <= 8)
            && Some(self.free.0) == self.free.1
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, deg: usize, weights: &[u32]) -> Monomial {
    let mut e = vec![0u16; n];
    for _ in 0..deg {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exponents(&e, weights)
}

fn coeff(rng: &mut ChaCha8Rng, f: &PrimeField) -> u32 {
    rng.gen_range(1..f.characteristic())
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, degs: std::ops::RangeInclusive<usize>, terms: usize, weights: &[u32], f: &PrimeField) -> Poly {
    let t: Vec<(Monomial, u32)> = (0..terms)
        .map(|_| {
            let deg = rng.gen_range(degs.clone());
            (random_monomial(rng, n, deg, weights), coeff(rng, f))
        })
        .collect();
    Poly::from_terms(t, f)
}

/// `x_i^a` plus a few terms of higher degree.
fn pure_power_with_tail(rng: &mut ChaCha8Rng, n: usize, i: usize, a: usize, weights: &[u32], f: &PrimeField) -> Poly {
    let mut e = vec![0u16; n];
    e[i] = a as u16;
    let lead = Poly::term(Monomial::from_exponents(&e, weights), coeff(rng, f));
    let tails = rng.gen_range(0..=2);
    lead.add(&random_poly(rng, n, a + 1..=a + 2, tails, weights, f), f)
}

fn ring(f: PrimeField, n: usize, weights: Vec<u32>, relations: Vec<Poly>, dim: usize) -> Result<AmbientRing, AlgebraError> {
    AmbientRing::new(f, NAMES[..n].iter().map(|s| s.to_string()).collect(), weights, relations, dim)
}

pub fn run_instance(index: u64, f: PrimeField) -> Result<InstanceOutcome, AlgebraError> {
    let seed = BASE_SEED + index;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = f.characteristic();

    let n = rng.gen_range(2..=3);
    let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    let mut relation = Poly::zero();
    while relation.is_zero() {
        let terms = rng.gen_range(2..=3);
        relation = random_poly(&mut rng, n, 2..=4, terms, &weights, &f);
    }
    let r = ring(f, n, weights.clone(), vec![relation.clone()], n - 1)?;
    let mut ideal: Vec<Poly> = (0..n)
        .map(|i| {
            let a = rng.gen_range(2..=3);
            pure_power_with_tail(&mut rng, n, i, a, &weights, &f)
        })
        .collect();
    if rng.gen_bool(0.5) {
        let terms = rng.gen_range(1..=3);
        ideal.push(random_poly(&mut rng, n, 2..=3, terms, &weights, &f));
    }
    let ideal: Vec<Poly> = ideal.into_iter().filter(|g| !g.is_zero()).collect();
    let vecs: Vec<Vector> = ideal.iter().map(|g| vec![g.clone()]).collect();
    let rel = std::slice::from_ref(&relation);

    let length = (r.ideal_colength(&ideal)?, oracle::quotient_length(p, n, 1, &vecs, rel, D_MAX));
    let x0 = r.var(0);
    let colon = r.ideal_colon(&ideal, &x0)?;
    let mut with_x = vecs.clone();
    with_x.push(vec![x0.clone()]);
    let oracle_colon = match (length.1, oracle::quotient_length(p, n, 1, &with_x, rel, D_MAX)) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    let colon_length = (r.ideal_colength(&colon)?, oracle_colon);
    let syz = r.syzygies(1, &vecs)?;
    let syzygies_agree = oracle::syzygies_agree(p, n, 1, &vecs, rel, &syz, 4, 5);

    let (a, b) = *[(2usize, 2usize), (2, 3), (3, 2), (2, 4), (4, 2)].choose(&mut rng).unwrap();
    let aw: Vec<u32> = (0..2).map(|_| rng.gen_range(1..=2)).collect();
    let mut art = vec![pure_power_with_tail(&mut rng, 2, 0, a, &aw, &f), pure_power_with_tail(&mut rng, 2, 1, b, &aw, &f)];
    if rng.gen_bool(0.4) {
        art.push(random_poly(&mut rng, 2, 2..=2, 2, &aw, &f));
    }
    let art: Vec<Poly> = art.into_iter().filter(|g| !g.is_zero()).collect();
    let artinian = ring(f, 2, aw.clone(), art.clone(), 0)?;
    let rows = rng.gen_range(1..=2);
    let cols = rng.gen_range(0..=2);
    let mut pres = Matrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let roll: f64 = rng.gen();
            let e = if roll < 0.3 {
                Poly::zero()
            } else if roll < 0.45 {
                Poly::constant(1).add(&random_poly(&mut rng, 2, 1..=2, 1, &aw, &f), &f)
            } else {
                let terms = rng.gen_range(1..=2);
                random_poly(&mut rng, 2, 1..=2, terms, &aw, &f)
            };
            pres.set(i, j, e);
        }
    }
    let engine_free = artinian.is_free_over_artinian(&ModuleData::presented(pres.clone()))?;
    let oracle_free = oracle::is_free(p, 2, &art, &pres, D_MAX);
    let artinian_length = oracle::quotient_length(p, 2, 1, &[], &art, D_MAX);

    let show = |r: &AmbientRing, ps: &[Poly]| ps.iter().map(|g| r.show(g)).collect::<Vec<_>>().join(", ");
    let description = format!(
        "seed {seed}: R = F_{p}[{}] with weights {weights:?} mod ({}), J = ({}); A = F_{p}[x,y] with weights {aw:?} mod ({}), {rows}×{cols} presentation",
        NAMES[..n].join(","),
        r.show(&relation),
        show(&r, &ideal),
        show(&artinian, &art),
    );
    Ok(InstanceOutcome { seed, description, length, colon_length, syzygies_agree, artinian_length, free: (engine_free, oracle_free) })
}
