use proptest::prelude::*;
use proxlat_core::constructions::{apply_functor, double, lower, patch, sigma, upper, vietoris, Kind};
use proxlat_core::entail::{generate_entailment, lattice_of_entailment, AxiomSet, SCEnt, UpperRel};
use proxlat_core::fixtures::{self, Fixture};
use proxlat_core::prox::{
    functor_f, functor_g, is_join_preserving_map, jp_literal, validate_prox_relation, ProxMap, ProxRel,
};
use proxlat_core::sets::{star, FinSet, SubsetFamily, Universe};
use proxlat_core::spectra::{frame_iso, lattice_iso, models_of_scent, points, rounded_ideals, scott_upsets};

fn fixture_pool() -> Vec<Fixture> {
    fixtures::all()
}

fn family_of(masks: &[u64], n: usize) -> SubsetFamily {
    masks.iter().map(|&m| FinSet::from_bits(m & FinSet::full(n).bits())).collect()
}

/// All families over `Fin(n)`.
fn families(n: usize) -> Vec<SubsetFamily> {
    let subsets: Vec<FinSet> = FinSet::all(n).collect();
    (0u64..1 << subsets.len()).map(|mask| FinSet::from_bits(mask).iter().map(|i| subsets[i]).collect()).collect()
}

fn axioms(n: usize, raw: &[(u64, u64)]) -> AxiomSet {
    let full = FinSet::full(n).bits();
    let ax = raw.iter().map(|&(a, b)| (FinSet::from_bits(a & full), FinSet::from_bits(b & full))).collect();
    AxiomSet::with_axioms(Universe::indexed(n).unwrap(), ax).unwrap()
}

/// The least relation on `Fin(n)` containing the axioms and closed under
/// (R), (M), (T): the intersection of all closed candidates.
fn least_entailment_oracle(n: usize, ax: &AxiomSet) -> Vec<Vec<bool>> {
    let k = 1usize << n;
    let bit = |a: usize, b: usize| a * k + b;
    let closed = |rel: u64| {
        let has = |a: usize, b: usize| rel >> bit(a, b) & 1 == 1;
        for a in 0..k {
            for b in 0..k {
                if a & b != 0 && !has(a, b) {
                    return false;
                }
                if has(a, b) {
                    for a2 in 0..k {
                        for b2 in 0..k {
                            if a & !a2 == 0 && b & !b2 == 0 && !has(a2, b2) {
                                return false;
                            }
                        }
                    }
                }
                for x in 0..n {
                    if has(a, b | 1 << x) && has(a | 1 << x, b) && !has(a, b) {
                        return false;
                    }
                }
            }
        }
        ax.axioms().iter().all(|&(a, b)| has(a.bits() as usize, b.bits() as usize))
    };
    let mut meet = u64::MAX;
    for rel in 0u64..1 << (k * k) {
        if closed(rel) {
            meet &= rel;
        }
    }
    (0..k).map(|a| (0..k).map(|b| meet >> bit(a, b) & 1 == 1).collect()).collect()
}

fn random_upper(src: usize, dst: usize, raw: &[(u64, u64)]) -> UpperRel {
    let counters = raw
        .iter()
        .map(|&(x, y)| {
            (FinSet::from_bits(x & FinSet::full(src).bits()), FinSet::from_bits(y & FinSet::full(dst).bits()))
        })
        .collect();
    UpperRel::from_counters(src, dst, counters)
}

/// Cut composite straight from its definition: some family `𝒱` with
/// `A r B` for every `B ∈ 𝒱*` and `B s C` for every `B ∈ 𝒱`.
fn cut_oracle(r: &UpperRel, s: &UpperRel, fams: &[SubsetFamily], a: FinSet, c: FinSet) -> bool {
    fams.iter().any(|v| star(v).iter().all(|b| r.contains(a, b)) && v.iter().all(|b| s.contains(b, c)))
}

type Dense = Vec<Vec<bool>>;

/// `A (t·u) D ⟺ ∃𝒱 (∀C∈𝒱* A u C) ∧ (∀C∈𝒱 C t D)` on `Fin(2)`.
fn dense_cut(u: &Dense, t: &Dense, fams: &[SubsetFamily]) -> Dense {
    (0..4)
        .map(|a| {
            (0..4)
                .map(|d| {
                    fams.iter().any(|v| {
                        star(v).iter().all(|c| u[a][c.bits() as usize]) && v.iter().all(|c| t[c.bits() as usize][d])
                    })
                })
                .collect()
        })
        .collect()
}

/// `r` then `s`.
fn dense_then(r: &Dense, s: &Dense) -> Dense {
    (0..4).map(|a| (0..4).map(|c| (0..4).any(|b| r[a][b] && s[b][c])).collect()).collect()
}

fn dense(bits: u16) -> Dense {
    (0..4).map(|a| (0..4).map(|b| bits >> (a * 4 + b) & 1 == 1).collect()).collect()
}

fn upward(mut m: Dense) -> Dense {
    let snapshot = m.clone();
    for (a, row) in snapshot.iter().enumerate() {
        for b in (0..4).filter(|&b| row[b]) {
            for (_, out) in m.iter_mut().enumerate().filter(|(a2, _)| a & !a2 == 0) {
                for (b2, cell) in out.iter_mut().enumerate() {
                    if b & !b2 == 0 {
                        *cell = true;
                    }
                }
            }
        }
    }
    m
}

/// Each row closed under unions, the empty join included.
fn rows_join_closed(mut m: Dense) -> Dense {
    for row in m.iter_mut() {
        row[0] = true;
        for _ in 0..2 {
            for x in 0..4 {
                for y in 0..4 {
                    if row[x] && row[y] {
                        row[x | y] = true;
                    }
                }
            }
        }
    }
    m
}

fn transpose(m: &Dense) -> Dense {
    (0..4).map(|a| (0..4).map(|b| m[b][a]).collect()).collect()
}

fn scents(f: &Fixture) -> Vec<SCEnt> {
    let s = &f.prox;
    vec![
        functor_g(s).unwrap(),
        sigma(s).unwrap().scent,
        upper(s).unwrap().scent,
        lower(s).unwrap().scent,
        double(s).unwrap().scent,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn saturation_is_the_least_closed_relation(n in 1usize..=2, raw in prop::collection::vec((0u64..4, 0u64..4), 0..4)) {
        let ax = axioms(n, &raw);
        let e = generate_entailment(&ax).unwrap();
        let oracle = least_entailment_oracle(n, &ax);
        for a in FinSet::all(n) {
            for b in FinSet::all(n) {
                prop_assert_eq!(e.entails(a, b), oracle[a.bits() as usize][b.bits() as usize]);
            }
        }
    }

    #[test]
    fn star_ignores_member_order(masks in prop::collection::vec(0u64..32, 0..5), shift in 0usize..5) {
        let mut rotated = masks.clone();
        if !rotated.is_empty() {
            let k = shift % rotated.len();
            rotated.rotate_left(k);
        }
        rotated.reverse();
        prop_assert_eq!(star(&family_of(&masks, 5)), star(&family_of(&rotated, 5)));
    }

    #[test]
    fn star_size_bound(masks in prop::collection::vec(0u64..32, 0..5)) {
        let u = family_of(&masks, 5);
        let bound: u64 = u.iter().map(|a| (1u64 << a.len()) - 1).product();
        prop_assert!(star(&u).len() as u64 <= bound);
    }

    #[test]
    fn double_star_is_the_same_element(n in 1usize..=4, raw in prop::collection::vec((0u64..16, 0u64..16), 0..4), masks in prop::collection::vec(0u64..16, 0..4)) {
        let e = generate_entailment(&axioms(n, &raw)).unwrap();
        let u = family_of(&masks, n);
        let uss = star(&star(&u));
        // Same element: the same models contain a member.
        let reach = |f: &SubsetFamily| -> Vec<bool> { e.models().iter().map(|&m| f.iter().any(|a| a.is_subset(m))).collect() };
        prop_assert_eq!(reach(&uss), reach(&u));
        let ent = e.to_upper();
        prop_assert!(ent.approx_ext(&uss, &u) && ent.approx_ext(&u, &uss));
        if n <= 3 {
            let l = lattice_of_entailment(&e).unwrap();
            prop_assert_eq!(l.element_of(&uss), l.element_of(&u));
        }
    }

    #[test]
    fn cut_composite_matches_its_definition(r in prop::collection::vec((0u64..4, 0u64..8), 0..4), s in prop::collection::vec((0u64..8, 0u64..4), 0..4)) {
        let (r, s) = (random_upper(2, 3, &r), random_upper(3, 2, &s));
        let fams = families(3);
        let rs = r.cut_then(&s).unwrap();
        for a in FinSet::all(2) {
            for c in FinSet::all(2) {
                prop_assert_eq!(rs.contains(a, c), cut_oracle(&r, &s, &fams, a, c));
            }
        }
    }

    #[test]
    fn lifting_to_families_is_functorial(r in prop::collection::vec((0u64..4, 0u64..4), 0..4), s in prop::collection::vec((0u64..4, 0u64..4), 0..4)) {
        let (r, s) = (random_upper(2, 2, &r), random_upper(2, 2, &s));
        let rs = r.cut_then(&s).unwrap();
        let fams = families(2);
        for u in &fams {
            for w in &fams {
                let via = fams.iter().any(|v| r.approx_ext(u, v) && s.approx_ext(v, w));
                prop_assert_eq!(rs.approx_ext(u, w), via);
                prop_assert_eq!(r.approx_ext(u, w), r.approx_ext_literal(u, w));
            }
        }
    }

    #[test]
    fn mixed_associativity(r in any::<u16>(), s in any::<u16>(), t in any::<u16>()) {
        let fams = families(2);
        let (r, s, t) = (dense(r), upward(dense(s)), dense(t));
        // Rows of r closed under joins: (t·s)∘r = t·(s∘r).
        let rj = rows_join_closed(r.clone());
        prop_assert_eq!(dense_then(&rj, &dense_cut(&s, &t, &fams)), dense_cut(&dense_then(&rj, &s), &t, &fams));
        // Columns of t closed under joins: (t∘s)·r = t∘(s·r).
        let tj = transpose(&rows_join_closed(transpose(&t)));
        prop_assert_eq!(dense_cut(&r, &dense_then(&s, &tj), &fams), dense_then(&dense_cut(&r, &s, &fams), &tj));
    }

    #[test]
    fn scent_closure_equalities(i in 0usize..24) {
        let f = &fixture_pool()[i];
        for e in scents(f) {
            let ent = e.ent.to_upper();
            let ll = e.ll();
            prop_assert_eq!(&ent.cut_then(&ll).unwrap(), &ll);
            prop_assert_eq!(&ll.cut_then(&ent).unwrap(), &ll);
            prop_assert_eq!(&ll.cut_then(&ll).unwrap(), &ll);
        }
    }

    #[test]
    fn transpose_law(i in 0usize..24, u in prop::collection::vec(0u64..32, 0..3), v in prop::collection::vec(0u64..32, 0..3)) {
        let f = &fixture_pool()[i];
        let e = functor_g(&f.prox).unwrap();
        let n = e.len();
        let (u, v) = (family_of(&u, n), family_of(&v, n));
        let ll = e.ll();
        prop_assert_eq!(ll.approx_ext(&u, &v), ll.transpose().approx_ext(&star(&v), &star(&u)));
    }

    #[test]
    fn transposed_morphisms_run_between_duals(i in 0usize..4, j in 0usize..4) {
        let named = fixtures::named();
        let (s, t) = (&named[i].prox, &named[j].prox);
        for m in fixtures::morphisms_between(s, t).unwrap() {
            let back = ProxRel::new(t.dual().lattice().clone(), s.dual().lattice().clone(), m.r.rel().transpose()).unwrap();
            prop_assert!(validate_prox_relation(&back).is_valid());
        }
    }

    #[test]
    fn jp_check_agrees_with_definition(i in 0usize..24, raw in prop::collection::vec((0u64..8, 0u64..8), 0..3)) {
        let f = &fixture_pool()[i];
        prop_assume!(f.prox.len() <= 3);
        let e = functor_g(&f.prox).unwrap();
        let n = e.len();
        let ll = e.ll();
        let noise = random_upper(n, n, &raw);
        let rel = ll.cut_then(&noise).unwrap().cut_then(&ll).unwrap();
        let m = ProxMap::new(e.clone(), e.clone(), rel).unwrap();
        prop_assert_eq!(is_join_preserving_map(&m), jp_literal(&m).unwrap());
    }

    #[test]
    fn scott_frame_is_upper_sets(i in 0usize..24) {
        let s = &fixture_pool()[i].prox;
        let via_sigma = rounded_ideals(&functor_f(&sigma(s).unwrap().scent).unwrap().prox).unwrap();
        prop_assert!(frame_iso(&scott_upsets(s).unwrap(), &via_sigma).unwrap().is_some());
    }

    #[test]
    fn models_are_points_of_the_image(i in 0usize..24) {
        let f = &fixture_pool()[i];
        for e in scents(f) {
            let image = functor_f(&e).unwrap();
            if image.prox.len() <= 16 {
                prop_assert_eq!(models_of_scent(&e).len(), points(&image.prox).unwrap().len());
            }
        }
    }

    #[test]
    fn ideal_completion_is_the_lattice(i in 0usize..24) {
        let l = fixture_pool()[i].prox.lattice().clone();
        for a in 0..l.len() {
            prop_assert!(l.is_ideal(l.down_set(a)));
        }
        prop_assert!(lattice_iso(l.ideal_completion().unwrap().lattice(), &l).is_some());
        prop_assert_eq!(l.dual().dual(), l);
    }

    #[test]
    fn functor_images_compose_to_join_preserving_maps(seed in 0u64..6) {
        for (f, g) in fixtures::chains(seed, 1, 3) {
            for kind in [Kind::Upper, Kind::Lower, Kind::Double, Kind::Vietoris] {
                let a = apply_functor(kind, &f.source, &f.target, &f.r, None).unwrap();
                let b = apply_functor(kind, &g.source, &g.target, &g.r, None).unwrap();
                prop_assert!(is_join_preserving_map(&a.then(&b).unwrap()));
            }
        }
    }

    #[test]
    fn vietoris_and_patch_keep_the_closure_equalities(i in 0usize..24) {
        let s = &fixture_pool()[i].prox;
        prop_assume!(s.len() <= 4);
        for e in [vietoris(s).unwrap().scent, patch(&functor_g(s).unwrap()).unwrap().scent] {
            let ll = e.ll();
            prop_assert_eq!(&ll.cut_then(&ll).unwrap(), &ll);
        }
    }
}
