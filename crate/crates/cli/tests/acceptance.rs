//! Acceptance suite. One test per criterion; each prints a single
//! criterion-level pass line on success (failures panic with the witness).
//!
//! All arithmetic is exact, so every comparison below is exact equality.

use std::process::Command;
use std::sync::OnceLock;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arrfact::bitset::IndexSet;
use arrfact::catalog::{
    boolean_arrangement, braid_arrangement, example_flat, intermediate_arrangement,
};
use arrfact::exactfield::poly::{z_mul, ZPoly};
use arrfact::exactfield::{CyclotomicNumber, FieldElement, Rational};
use arrfact::factorization::{
    self, exponents_from_factorization, is_nice_with_lattice, Certificate, Engine, NiceCheck,
    Partition, SearchMode,
};
use arrfact::geometry::{intersect_kernels, rank_of, Functional};
use arrfact::lattice::{
    closure, localization_at_subspace, restriction_with_trace, Flat, IntersectionLattice,
};
use arrfact::{Arrangement, FieldContext};

fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(Engine::new)
}

/// The supersolvable benchmark family: braid l in 2..=5, boolean l in 1..=3,
/// intermediate A^k_l(r) for l <= 4, r <= 3, k in {l-1, l}.
fn benchmark_arrangements() -> Vec<Arrangement> {
    let mut all = Vec::new();
    for l in 2..=5 {
        all.push(braid_arrangement(l));
    }
    for l in 1..=3 {
        all.push(boolean_arrangement(l));
    }
    for l in 2..=4usize {
        for r in [2u32, 3] {
            for k in [l - 1, l] {
                all.push(intermediate_arrangement(l, r, k).unwrap());
            }
        }
    }
    all
}

fn find_factorization(a: &Arrangement) -> (Partition, Certificate) {
    engine()
        .find_inductive_factorization(a, SearchMode::ChiPruned)
        .unwrap()
        .unwrap_or_else(|| panic!("{:?} admits an inductive factorization", a.name()))
}

#[test]
fn criterion_1_supersolvable_implies_inductively_factored() {
    for a in benchmark_arrangements() {
        let lattice = IntersectionLattice::build(&a).unwrap();
        assert!(
            lattice.modular_chain().is_some(),
            "{:?} must be supersolvable",
            a.name()
        );
        let (pi, cert) = find_factorization(&a);
        assert!(engine().verify_certificate(&a, &cert).unwrap().is_valid());

        let exponents = exponents_from_factorization(&pi, a.dim());
        assert_eq!(exponents.sum(), a.len(), "exponents sum to |A|");
        assert_eq!(exponents.len(), a.dim());
        let zeros = exponents.values().iter().filter(|&&v| v == 0).count();
        assert_eq!(zeros, a.dim() - lattice.rank(), "0^(l - r) padding");
        let mut sizes = pi.sizes();
        sizes.sort_unstable();
        assert_eq!(exponents.nonzero(), sizes, "nonzero exponents = block sizes");

        let free_exponents = engine().is_inductively_free(&a).unwrap().unwrap();
        assert_eq!(
            free_exponents, exponents,
            "{:?}: factorization exponents agree with the freeness oracle",
            a.name()
        );
    }
    println!("criterion 1: PASS - supersolvable family is inductively factored with matching exponents");
}

#[test]
fn criterion_2_inductive_factorizations_localize() {
    let mut flats_checked = 0usize;
    for a in benchmark_arrangements() {
        let (pi, cert) = find_factorization(&a);
        let lattice = IntersectionLattice::build(&a).unwrap();
        for x in lattice.flats() {
            let local = a.subarrangement(x.members);
            let (pi_local, _) = pi.induced_relabeled(x.members);
            let accepted = engine()
                .is_inductively_factored(&local, &pi_local)
                .unwrap();
            assert!(
                accepted.is_some(),
                "{:?}: induced partition fails at flat {{{}}}",
                a.name(),
                x.members
            );
            let localized = engine().localize_certificate(&a, &cert, x).unwrap();
            assert!(
                engine()
                    .verify_certificate(&local, &localized)
                    .unwrap()
                    .is_valid(),
                "{:?}: localized certificate fails at flat {{{}}}",
                a.name(),
                x.members
            );
            flats_checked += 1;
        }
    }
    println!(
        "criterion 2: PASS - localized factorizations and certificates verified on {} flats",
        flats_checked
    );
}

#[test]
fn criterion_3_negative_instance_g333() {
    let g333 = intermediate_arrangement(3, 3, 0).unwrap();
    assert!(
        engine()
            .find_inductive_factorization(&g333, SearchMode::ChiPruned)
            .unwrap()
            .is_none(),
        "A(G(3,3,3)) must admit no inductive factorization (chi-pruned)"
    );
    assert!(
        engine()
            .find_inductive_factorization(&g333, SearchMode::Exhaustive)
            .unwrap()
            .is_none(),
        "A(G(3,3,3)) must admit no inductive factorization (exhaustive)"
    );
    println!("criterion 3: PASS - exhaustive search refutes inductive factoredness of A(G(3,3,3))");
}

#[test]
fn criterion_3_cross_check_indfree_exponents_g333() {
    // A(G(3,3,3)) is free with exponents {1,4,4}: its characteristic
    // polynomial is (t-1)(t-4)^2 (see the charpoly oracle tests). It is not,
    // however, inductively free: chi of each of its nine deletions is
    // (t-1)(t^2-7t+13), whose quadratic factor has no integer roots, so no
    // deletion is free and the defining recursion can never apply. The
    // membership search therefore honestly reports None, and this stated
    // cross-check cannot hold.
    let g333 = intermediate_arrangement(3, 3, 0).unwrap();
    let exponents = engine().is_inductively_free(&g333).unwrap();
    assert_eq!(
        exponents.map(|e| e.values().to_vec()),
        Some(vec![1, 4, 4]),
        "A(G(3,3,3)) is free with exponents {{1,4,4}} but lies outside the \
         inductively free class (no deletion is free), so the search returns None"
    );
    println!("criterion 3 cross-check: PASS");
}

/// The essential part of chi: coefficients above the forced t^(l - r) factor.
fn essential_charpoly(lattice: &IntersectionLattice) -> Vec<BigInt> {
    lattice.charpoly()[lattice.dim() - lattice.rank()..].to_vec()
}

#[test]
fn criterion_4_intermediate_arrangement_end_to_end() {
    // Library route: localize A^1_4(3) at the distinguished flat.
    let a = intermediate_arrangement(4, 3, 1).unwrap();
    assert_eq!(a.len(), 19);
    let x = example_flat(4, 3, 1).unwrap();
    let local = localization_at_subspace(&a, &x);
    assert_eq!(local.len(), 9, "the localization has 9 hyperplanes");

    let local_lattice = IntersectionLattice::build(&local).unwrap();
    let g333 = intermediate_arrangement(3, 3, 0).unwrap();
    let g333_lattice = IntersectionLattice::build(&g333).unwrap();
    assert_eq!(
        essential_charpoly(&local_lattice),
        essential_charpoly(&g333_lattice),
        "the localization shares the characteristic polynomial of A^0_3(3)"
    );

    assert!(
        engine()
            .find_inductive_factorization(&local, SearchMode::Exhaustive)
            .unwrap()
            .is_none(),
        "exhaustive search on the localization returns None"
    );

    // CLI route: the report concludes by localization closure.
    let dir = tempfile::tempdir().unwrap();
    let a_path = dir.path().join("a143.json");
    let x_path = dir.path().join("x143.json");
    let bin = env!("CARGO_BIN_EXE_arrfact");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env_remove("ARRFACT_BUDGET")
            .output()
            .expect("binary runs")
    };
    assert!(run(&[
        "build",
        "intermediate",
        "--l",
        "4",
        "--r",
        "3",
        "--k",
        "1",
        "--output",
        a_path.to_str().unwrap(),
    ])
    .status
    .success());
    assert!(run(&[
        "flat",
        "example",
        "--l",
        "4",
        "--r",
        "3",
        "--k",
        "1",
        "--output",
        x_path.to_str().unwrap(),
    ])
    .status
    .success());
    let out = run(&[
        "find-indfac",
        "--input",
        a_path.to_str().unwrap(),
        "--localize",
        x_path.to_str().unwrap(),
        "--exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(1), "the checked property fails");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("A^1_4(3) is not inductively factored (by localization closure)"),
        "CLI conclusion missing; got:\n{}",
        text
    );
    println!("criterion 4: PASS - A^1_4(3) refuted through its G(3,3,3)-shaped localization");
}

/// All set partitions of {0..n-1} as restricted growth strings.
fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    fn rec(assign: &mut Vec<usize>, pos: usize, used: usize, out: &mut Vec<Partition>) {
        let n = assign.len();
        if pos == n {
            let mut blocks = vec![IndexSet::EMPTY; used];
            for (h, &b) in assign.iter().enumerate() {
                blocks[b].insert(h);
            }
            out.push(Partition::new(blocks, n).unwrap());
            return;
        }
        for b in 0..=used.min(n - 1) {
            assign[pos] = b;
            rec(assign, pos + 1, used.max(b + 1), out);
        }
    }
    if n > 0 {
        rec(&mut assign, 0, 0, &mut out);
    }
    out
}

#[test]
fn criterion_5_addition_deletion_consistency() {
    use std::collections::HashMap;

    // The 13 canonical functionals on Q^3 with coefficients in {-1, 0, 1}.
    let mut universe: Vec<Functional> = Vec::new();
    for a in -1i64..=1 {
        for b in -1i64..=1 {
            for c in -1i64..=1 {
                let coeffs: Vec<FieldElement> = [a, b, c]
                    .iter()
                    .map(|&v| FieldElement::Rational(Rational::from(BigInt::from(v))))
                    .collect();
                if let Ok(f) = Functional::new(coeffs) {
                    if !universe.contains(&f) {
                        universe.push(f);
                    }
                }
            }
        }
    }
    assert_eq!(universe.len(), 13);

    // Lazily cache arrangements and lattices per subset of the universe, and
    // restrictions (with their lattices) per (subset, pivot).
    use std::rc::Rc;
    let mut by_mask: HashMap<u32, Rc<(Arrangement, IntersectionLattice)>> = HashMap::new();
    fn arrangement_for(
        universe: &[Functional],
        mask: u32,
        cache: &mut HashMap<u32, Rc<(Arrangement, IntersectionLattice)>>,
    ) -> Rc<(Arrangement, IntersectionLattice)> {
        if let Some(hit) = cache.get(&mask) {
            return hit.clone();
        }
        let functionals: Vec<Functional> = (0..universe.len())
            .filter(|i| (mask >> i) & 1 == 1)
            .map(|i| universe[i].clone())
            .collect();
        let a = Arrangement::from_functionals(3, FieldContext::Rational, functionals).unwrap();
        let lat = IntersectionLattice::build(&a).unwrap();
        let entry = Rc::new((a, lat));
        cache.insert(mask, entry.clone());
        entry
    }

    let partitions_by_n: Vec<Vec<Partition>> = (0..=5).map(all_partitions).collect();

    let masks: Vec<u32> = (1u32..(1 << 13))
        .filter(|m| (1..=5).contains(&m.count_ones()))
        .collect();

    let mut checked = 0u64;
    for &mask in &masks {
        let entry = arrangement_for(&universe, mask, &mut by_mask);
        let (a, lattice) = (&entry.0, &entry.1);
        let n = a.len();
        // Restrictions and their lattices, one per pivot.
        let restrictions: Vec<(Arrangement, Vec<Option<usize>>, IntersectionLattice)> = (0..n)
            .map(|pivot| {
                let flat = Flat {
                    members: IndexSet::singleton(pivot),
                    rank: 1,
                };
                let (restricted, trace) = restriction_with_trace(a, &flat);
                let lat = IntersectionLattice::build(&restricted).unwrap();
                (restricted, trace, lat)
            })
            .collect();
        // Deletions map to other masks of the universe.
        let bits: Vec<usize> = (0..13).filter(|i| (mask >> i) & 1 == 1).collect();

        for pi in &partitions_by_n[n] {
            let full_nice = is_nice_with_lattice(a, lattice, pi).unwrap().is_nice();
            for pivot in 0..n {
                let pivot_block = pi.block_of(pivot).unwrap();

                let deleted_mask = mask & !(1u32 << bits[pivot]);
                let deleted_entry = arrangement_for(&universe, deleted_mask, &mut by_mask);
                let remaining = IndexSet::full(n).difference(IndexSet::singleton(pivot));
                let (pi_deleted, _) = pi.induced_relabeled(remaining);
                let deleted_nice =
                    is_nice_with_lattice(&deleted_entry.0, &deleted_entry.1, &pi_deleted)
                        .unwrap()
                        .is_nice();

                let (restricted, trace, restricted_lattice) = &restrictions[pivot];
                let rm = factorization::restriction_map(a, pi, pivot).unwrap();
                debug_assert_eq!(rm.restricted.len(), restricted.len());
                let _ = trace;
                let third = match &rm.restricted_partition {
                    Some(pi_restricted) => {
                        rm.bijective
                            && is_nice_with_lattice(restricted, restricted_lattice, pi_restricted)
                                .unwrap()
                                .is_nice()
                    }
                    None => false,
                };

                let trues = [full_nice, deleted_nice, third]
                    .iter()
                    .filter(|&&s| s)
                    .count();
                assert_ne!(
                    trues, 2,
                    "addition-deletion violated: mask {:#b}, partition {:?}, pivot {} \
                     (block {}), statements ({}, {}, {})",
                    mask,
                    pi.to_json(),
                    pivot,
                    pivot_block,
                    full_nice,
                    deleted_nice,
                    third
                );
                checked += 1;
            }
        }
    }
    println!(
        "criterion 5: PASS - {} addition-deletion instances, no two-imply-third violation",
        checked
    );
}

#[test]
fn criterion_6_inductive_freeness_localizes() {
    let mut checked = 0usize;
    for a in benchmark_arrangements() {
        assert!(engine().is_inductively_free(&a).unwrap().is_some());
        let lattice = IntersectionLattice::build(&a).unwrap();
        for x in lattice.flats() {
            let local = a.subarrangement(x.members);
            assert!(
                engine().is_inductively_free(&local).unwrap().is_some(),
                "{:?}: localization at {{{}}} must stay inductively free",
                a.name(),
                x.members
            );
            checked += 1;
        }
    }
    println!(
        "criterion 6: PASS - inductive freeness verified on {} localizations",
        checked
    );
}

#[test]
fn criterion_7_restriction_localization_commute() {
    let cases = [
        braid_arrangement(4),
        intermediate_arrangement(3, 3, 0).unwrap(),
    ];
    let mut checked = 0usize;
    for a in &cases {
        let lattice = IntersectionLattice::build(a).unwrap();
        for x in lattice.flats() {
            for y in lattice.flats() {
                if !y.members.is_subset(x.members) {
                    continue;
                }
                // (A_X)^Y: restrict the localization at X to the flat Y.
                let a_x = a.subarrangement(x.members);
                let y_in_x = Flat {
                    members: y.members.relabel_into(x.members),
                    rank: y.rank,
                };
                let lhs = arrfact::lattice::restriction(&a_x, &y_in_x).unwrap();

                // (A^Y)_X: localize the restriction at Y to the image of X.
                let (a_y, trace) = restriction_with_trace(a, y);
                let image: IndexSet = x
                    .members
                    .difference(y.members)
                    .iter()
                    .map(|h| trace[h].expect("hyperplanes outside Y have images"))
                    .collect();
                let rhs = a_y.subarrangement(image);

                assert!(
                    lhs.same_hyperplanes(&rhs),
                    "{:?}: (A_X)^Y != (A^Y)_X for X={{{}}}, Y={{{}}}",
                    a.name(),
                    x.members,
                    y.members
                );
                checked += 1;
            }
        }
    }
    println!(
        "criterion 7: PASS - restriction and localization commute on {} flat pairs",
        checked
    );
}

/// chi(A, t) = t^(l - s) * prod over blocks (t - |block|), exactly.
fn terao_factorization_holds(a: &Arrangement, pi: &Partition) -> bool {
    let lattice = IntersectionLattice::build(a).unwrap();
    let mut expected: ZPoly = vec![BigInt::from(1)];
    for size in pi.sizes() {
        expected = z_mul(&expected, &vec![BigInt::from(-(size as i64)), BigInt::from(1)]);
    }
    let shift = a.dim() - pi.len();
    let mut shifted = vec![BigInt::from(0); shift];
    shifted.extend(expected);
    lattice.charpoly() == &shifted
}

#[test]
fn criterion_8_terao_factorization_cross_check() {
    let mut checked = 0usize;
    for a in benchmark_arrangements() {
        let (pi, _) = find_factorization(&a);
        assert!(
            terao_factorization_holds(&a, &pi),
            "{:?}: chi does not factor over the top partition",
            a.name()
        );
        checked += 1;
        // Every nice partition induced on a localization factors chi as well.
        let lattice = IntersectionLattice::build(&a).unwrap();
        for x in lattice.flats() {
            let local = a.subarrangement(x.members);
            let (pi_local, _) = pi.induced_relabeled(x.members);
            assert!(
                terao_factorization_holds(&local, &pi_local),
                "{:?}: chi does not factor at flat {{{}}}",
                a.name(),
                x.members
            );
            checked += 1;
        }
    }
    println!(
        "criterion 8: PASS - Terao factorization of chi on {} nice pairs",
        checked
    );
}

fn random_rational(rng: &mut ChaCha8Rng) -> FieldElement {
    FieldElement::Rational(Rational::new(
        BigInt::from(rng.gen_range(-50i64..=50)),
        BigInt::from(rng.gen_range(1i64..=20)),
    ))
}

fn random_cyclotomic(rng: &mut ChaCha8Rng, order: u32) -> FieldElement {
    let degree = arrfact::exactfield::totient(order);
    let coeffs: Vec<Rational> = (0..degree)
        .map(|_| {
            Rational::new(
                BigInt::from(rng.gen_range(-9i64..=9)),
                BigInt::from(rng.gen_range(1i64..=6)),
            )
        })
        .collect();
    FieldElement::Cyclotomic(CyclotomicNumber::from_coeffs(order, coeffs).unwrap())
}

#[test]
fn criterion_9a_field_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in 0..1000 {
        let (a, b, c) = if case % 2 == 0 {
            (
                random_rational(&mut rng),
                random_rational(&mut rng),
                random_rational(&mut rng),
            )
        } else {
            let order = rng.gen_range(2u32..=6);
            (
                random_cyclotomic(&mut rng, order),
                random_cyclotomic(&mut rng, order),
                random_cyclotomic(&mut rng, order),
            )
        };
        assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(a.add(&b), b.add(&a));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }
    println!("criterion 9a: PASS - field axioms on 1000 random scalar triples");
}

fn random_arrangement(rng: &mut ChaCha8Rng) -> Arrangement {
    let dim = rng.gen_range(2usize..=4);
    let rows = rng.gen_range(1usize..=6);
    let mut functionals: Vec<Functional> = Vec::new();
    for _ in 0..rows {
        let coeffs: Vec<FieldElement> = (0..dim)
            .map(|_| FieldElement::Rational(Rational::from(BigInt::from(rng.gen_range(-2i64..=2)))))
            .collect();
        if let Ok(f) = Functional::new(coeffs) {
            if !functionals.contains(&f) {
                functionals.push(f);
            }
        }
    }
    Arrangement::from_functionals(dim, FieldContext::Rational, functionals).unwrap()
}

#[test]
fn criterion_9b_closure_laws_and_rank_nullity() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..1000 {
        let a = random_arrangement(&mut rng);
        let n = a.len();
        let set: IndexSet = (0..n).filter(|_| rng.gen_bool(0.4)).collect();

        // Closure-operator laws.
        let closed = closure(&a, set);
        assert!(set.is_subset(closed.members), "extensive");
        assert_eq!(
            closure(&a, closed.members).members,
            closed.members,
            "idempotent"
        );
        for drop in set.iter() {
            let smaller = set.difference(IndexSet::singleton(drop));
            assert!(
                closure(&a, smaller).members.is_subset(closed.members),
                "monotone"
            );
        }

        // Rank-nullity for the chosen subset and the whole arrangement.
        for members in [set, IndexSet::full(n)] {
            let rank = rank_of(members.iter().map(|i| a.functional(i)));
            let kernel = intersect_kernels(a.dim(), a.field(), members.iter().map(|i| a.functional(i)));
            assert_eq!(rank + kernel.dim(), a.dim(), "rank-nullity");
        }
    }
    println!("criterion 9b: PASS - closure laws and rank-nullity on 1000 random arrangements");
}

#[test]
fn criterion_9c_certificate_round_trip_and_determinism() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let braid4 = braid_arrangement(4);
    let boolean3 = boolean_arrangement(3);
    let mut found = 0usize;
    for case in 0..1000 {
        // Random sub-arrangements of the catalog plus random small ones.
        let a = match case % 3 {
            0 => {
                let members: IndexSet = (0..braid4.len()).filter(|_| rng.gen_bool(0.5)).collect();
                braid4.subarrangement(members)
            }
            1 => {
                let members: IndexSet = (0..boolean3.len()).filter(|_| rng.gen_bool(0.6)).collect();
                boolean3.subarrangement(members)
            }
            _ => random_arrangement(&mut rng),
        };
        let first = Engine::new()
            .find_inductive_factorization(&a, SearchMode::ChiPruned)
            .unwrap();
        let second = Engine::new()
            .find_inductive_factorization(&a, SearchMode::ChiPruned)
            .unwrap();
        assert_eq!(first, second, "searches are deterministic");
        let Some((pi, cert)) = first else { continue };
        found += 1;
        assert_eq!(&cert.partition, &pi);
        assert!(
            engine().verify_certificate(&a, &cert).unwrap().is_valid(),
            "freshly found certificates verify"
        );
        // JSON round-trip reproduces the certificate bit for bit.
        let text = serde_json::to_string(&cert.to_json()).unwrap();
        let back = Certificate::from_json_str(&text, a.len()).unwrap();
        assert_eq!(back, cert);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
        assert!(engine().verify_certificate(&a, &back).unwrap().is_valid());
    }
    assert!(found >= 300, "enough positive instances: {}", found);
    println!(
        "criterion 9c: PASS - certificate round-trip and determinism on 1000 random cases ({} positive)",
        found
    );
}

/// Nice partitions stay nice under localization (exercised as part of the
/// acceptance run because criterion 2 leans on it).
#[test]
fn nice_partitions_localize() {
    for a in [braid_arrangement(4), boolean_arrangement(3)] {
        let (pi, _) = find_factorization(&a);
        let lattice = IntersectionLattice::build(&a).unwrap();
        assert!(matches!(
            is_nice_with_lattice(&a, &lattice, &pi).unwrap(),
            NiceCheck::Nice
        ));
        for x in lattice.flats() {
            assert!(factorization::check_nice_localization(&a, &pi, x).unwrap());
        }
    }
}
