use proptest::prelude::*;
use ulrich_core::oracle;
use ulrich_core::{AmbientRing, Matrix, ModuleData, Monomial, Poly, PrimeField, Vector, DEFAULT_PRIME};

const D_MAX: usize = 16;

fn field() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn names(n: usize) -> Vec<String> {
    ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
}

/// `F_p[x,y,z]/(x^2+y^2+z^4)` with weights (2,2,1).
fn hypersurface() -> AmbientRing {
    let f = field();
    let probe = AmbientRing::regular(f, names(3), vec![2, 2, 1]).unwrap();
    let rel = probe.p("x^2+y^2+z^4");
    AmbientRing::new(f, names(3), vec![2, 2, 1], vec![rel], 2).unwrap()
}

fn plane() -> AmbientRing {
    AmbientRing::regular(field(), names(2), vec![1, 1]).unwrap()
}

fn poly_in(r: &AmbientRing, terms: &[(Vec<u16>, u32)]) -> Poly {
    let f = *r.field();
    Poly::from_terms(terms.iter().map(|(e, c)| (Monomial::from_exponents(e, r.weights()), *c)), &f)
}

type Terms = Vec<(Vec<u16>, u32)>;
type PrimarySpec = (Vec<u16>, Vec<Terms>, Terms);

fn terms(n: usize, min_deg: u16) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0u16..3, n), 1u32..DEFAULT_PRIME), 1..=3)
        .prop_map(move |ts| ts.into_iter().filter(|(e, _)| e.iter().sum::<u16>() >= min_deg).collect())
}

/// Pure powers with tails plus one extra generator, so the ideal is primary to the maximal ideal.
fn primary_ideal(n: usize) -> impl Strategy<Value = PrimarySpec> {
    (prop::collection::vec(1u16..=3, n), prop::collection::vec(terms(n, 2), n), terms(n, 1))
}

fn build_ideal(r: &AmbientRing, (powers, tails, extra): &PrimarySpec) -> Vec<Poly> {
    let f = *r.field();
    let n = r.nvars();
    let mut gens: Vec<Poly> = (0..n)
        .map(|i| {
            let mut e = vec![0u16; n];
            e[i] = powers[i];
            let tail: Vec<_> = tails[i].iter().filter(|(t, _)| t.iter().sum::<u16>() > powers[i]).cloned().collect();
            poly_in(r, &[(e, 1)]).add(&poly_in(r, &tail), &f)
        })
        .collect();
    let x = poly_in(r, extra);
    if !x.is_zero() {
        gens.push(x);
    }
    gens
}

fn monomials_of_weight(weights: &[u32], d: u32) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for a in 0..=d / weights[0] {
        for b in 0..=(d - a * weights[0]) / weights[1] {
            let rest = d - a * weights[0] - b * weights[1];
            if rest.is_multiple_of(weights[2]) {
                out.push(vec![a as u16, b as u16, (rest / weights[2]) as u16]);
            }
        }
    }
    out
}

/// Weighted degrees and coefficient seeds for generators that are homogeneous
/// for the grading of the hypersurface.
fn homogeneous_ideal() -> impl Strategy<Value = Vec<(u32, Vec<u32>)>> {
    prop::collection::vec((2u32..=4, prop::collection::vec(0u32..DEFAULT_PRIME, 6)), 2..=4)
}

fn build_homogeneous(r: &AmbientRing, spec: &[(u32, Vec<u32>)]) -> Vec<Poly> {
    spec.iter()
        .map(|(d, cs)| {
            let ms = monomials_of_weight(r.weights(), *d);
            let ts: Vec<(Vec<u16>, u32)> = ms.into_iter().zip(cs.iter().cycle()).filter(|(_, c)| **c % 3 != 0).map(|(m, c)| (m, *c)).collect();
            poly_in(r, &ts)
        })
        .filter(|g| !g.is_zero())
        .collect()
}

fn assert_complex(r: &AmbientRing, gens: &[Poly], steps: usize) {
    let f = *r.field();
    let res = r.resolve(&ModuleData::cyclic(gens), steps).unwrap();
    for k in 1..res.matrices.len() {
        let prod: Matrix = res.differential(k).mul(res.differential(k + 1), &f);
        assert!(prod.entries().all(|e| r.is_zero(e)), "d{} d{} is nonzero", k, k + 1);
    }
    let syz = r.syzygies(res.differential(1).rows(), &res.differential(1).columns()).unwrap();
    assert!(syz.iter().all(|s| r.is_zero_vector(&res.differential(1).apply(s, &f))));
}

#[test]
fn resolutions_of_inhomogeneous_ideals_are_complexes() {
    let r = hypersurface();
    for gens in [
        ["3240*x^2*y^2*z^2 + 10087*x^2 + x", "-9613*y^2*z^2 + y^3", "4682*x*y*z^2 + z^3", "-14617*x*y*z^2 - 2529*y - 4065*x"],
        ["-14919*y^2*z^2 - 1421*x*y*z^2 + x^2", "8231*x*y*z^2 + y^3", "15038*x*y^2*z^2 + z^3", "3956*y^2*z^2 + 5567*x^2*z^2 + 12783*x"],
    ] {
        let gens: Vec<Poly> = gens.iter().map(|g| r.p(g)).collect();
        assert_complex(&r, &gens, 4);
    }
}

fn columns(gens: &[Poly]) -> Vec<Vector> {
    gens.iter().map(|g| vec![g.clone()]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn standard_bases_are_idempotent(spec in primary_ideal(3)) {
        let r = hypersurface();
        let gens = columns(&build_ideal(&r, &spec));
        let sb = r.standard_basis(1, &gens).unwrap();
        let again = r.standard_basis(1, &sb.basis_vectors()).unwrap();
        prop_assert_eq!(sb.leading_terms(), again.leading_terms());
        prop_assert_eq!(sb.colength(), again.colength());
        prop_assert!(r.submodule_equals(1, &gens, &sb.basis_vectors()).unwrap());
    }

    #[test]
    fn ideal_equality_is_an_equivalence(spec in primary_ideal(3), c in 1u32..DEFAULT_PRIME) {
        let r = hypersurface();
        let f = *r.field();
        let a = build_ideal(&r, &spec);
        let mut b: Vec<Poly> = a.iter().rev().map(|g| g.scale(c, &f)).collect();
        b[0] = b[0].add(&a[1].mul(&r.var(2), &f), &f);
        let mut d = b.clone();
        d.push(a[0].mul(&a[1], &f));
        prop_assert!(r.ideals_equal(&a, &a).unwrap());
        prop_assert_eq!(r.ideals_equal(&a, &b).unwrap(), r.ideals_equal(&b, &a).unwrap());
        prop_assert!(r.ideals_equal(&a, &b).unwrap());
        prop_assert!(r.ideals_equal(&b, &d).unwrap());
        prop_assert!(r.ideals_equal(&a, &d).unwrap());
    }

    #[test]
    fn powers_descend(spec in primary_ideal(2), k in 1usize..=3) {
        let r = plane();
        let a = build_ideal(&r, &spec);
        let ik = r.ideal_power(&a, k);
        let ik1 = r.ideal_power(&a, k + 1);
        prop_assert!(r.ideal_contains_all(&ik, &ik1).unwrap());
        let (lk, lk1) = (r.ideal_colength(&ik).unwrap().unwrap(), r.ideal_colength(&ik1).unwrap().unwrap());
        prop_assert!(lk < lk1);
    }

    #[test]
    fn consecutive_differentials_compose_to_zero(spec in homogeneous_ideal()) {
        let r = hypersurface();
        let a = build_homogeneous(&r, &spec);
        prop_assume!(!a.is_empty());
        assert_complex(&r, &a, 4);
    }

    #[test]
    fn lengths_and_syzygies_agree_with_the_oracle(spec in primary_ideal(3)) {
        let r = hypersurface();
        let p = r.characteristic();
        let gens = columns(&build_ideal(&r, &spec));
        let length = r.quotient_length(1, &gens).unwrap();
        prop_assert_eq!(length, oracle::quotient_length(p, 3, 1, &gens, r.relations(), D_MAX));
        let syz = r.syzygies(1, &gens).unwrap();
        prop_assert!(oracle::syzygies_agree(p, 3, 1, &gens, r.relations(), &syz, 4, 5));
    }
}
