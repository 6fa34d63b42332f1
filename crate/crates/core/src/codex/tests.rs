use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::bundled;
use crate::fincat::{Diagram, FinFunctor, ObjId, Search};

use super::laws::terminal_transformation;
use super::*;

fn chat(name: &str) -> Chat {
    Chat::build(&bundled::diagram(name), Search::default().cap).unwrap()
}

fn names(c: &Codex) -> Vec<String> {
    c.cat.objects().map(|x| c.cat.object_name(x).to_owned()).collect()
}

/// Objects of the comma category of `C_q` over `C_mu`, counted directly.
fn comma_oracle(d: &Diagram, mu: crate::mode_theory::MorId) -> usize {
    let (cp, cq) = (d.source_cat(mu), d.target_cat(mu));
    let f = d.functor(mu);
    let mut n = 0;
    for a in cq.objects() {
        for b in cp.objects() {
            n += cq.hom(a, f.on_obj(b)).len();
        }
    }
    n
}

#[test]
fn single_arrow_families_are_the_comma_category() {
    let c = chat("single_arrow");
    let mt = &c.diagram.mt;
    let (p, q, mu) = (mt.mode("p").unwrap(), mt.mode("q").unwrap(), mt.mor("mu").unwrap());
    let cq = c.at(q);
    assert_eq!(cq.objects.len(), 3);
    assert_eq!(cq.objects.len(), comma_oracle(&c.diagram, mu));
    let mut got = names(cq);
    got.sort();
    // indices are listed as (id:q, mu)
    assert_eq!(got, ["(0,0)", "(0,1)", "(1,1)"]);

    let cp = c.at(p);
    let back = reflect(&c, mt.identity(p));
    let base = c.diagram.cat(p);
    assert_eq!(cp.cat.object_count(), base.object_count());
    assert_eq!(cp.cat.arrow_count(), base.arrow_count());
    back.verify(&cp.cat, base).unwrap();
    let mut image = back.obj.clone();
    image.sort();
    image.dedup();
    assert_eq!(image.len(), base.object_count());
}

#[test]
fn lock_and_restriction_project_the_mu_component() {
    let c = chat("single_arrow");
    let mt = &c.diagram.mt;
    let (q, mu) = (mt.mode("q").unwrap(), mt.mor("mu").unwrap());
    let cq = c.at(q);
    let x = cq.cat.object_by_name("(0,1)").unwrap();
    let base = c.diagram.source_cat(mu);
    assert_eq!(base.object_name(reflect(&c, mu).on_obj(x)), "1");
    let locked = lock_functor(&c, mu).unwrap().on_obj(x);
    let cp = c.at(mt.source(mu));
    assert_eq!(cp.cat.object_name(locked), "(1)");
}

#[test]
fn identity_locks_are_identities_and_composites_are_strict() {
    let c = chat("reflective");
    let mt = &c.diagram.mt;
    for r in mt.modes() {
        let cat = &c.at(r).cat;
        assert_eq!(lock_functor(&c, mt.identity(r)).unwrap(), FinFunctor::identity(cat));
    }
    let (mu, nu) = (mt.mor("mu").unwrap(), mt.mor("nu").unwrap());
    for (outer, inner) in [(mu, nu), (nu, mu)] {
        let both = mt.compose(outer, inner).unwrap();
        let lhs = lock_functor(&c, both).unwrap();
        let rhs = lock_functor(&c, inner).unwrap().after(&lock_functor(&c, outer).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn mate_of_the_unit_is_not_an_identity() {
    let c = chat("reflective");
    let mt = &c.diagram.mt;
    let st = Structure::new(&c, &Search::default()).unwrap();
    let eta = mt.cell("eta").unwrap();
    let k = c
        .codex
        .iter()
        .flat_map(|x| x.shape.decomps.iter().copied())
        .find(|k| k.alpha == eta)
        .expect("the unit is a decomposition of the identity");
    let m = st.adjoints.mate(k).unwrap();
    let top = &c.at(mt.target(k.mu)).cat;
    assert!(m.comp.iter().any(|&a| !top.is_identity(a)));
}

#[test]
fn sinister_locks_have_their_dagger_as_right_adjoint() {
    let c = chat("reflective");
    let mt = &c.diagram.mt;
    let mu = mt.mor("mu").unwrap();
    let dagger = mt.adjoint(mu).expect("mu is sinister").dagger;
    let st = Structure::new(&c, &Search::default()).unwrap();
    let r = st.radj(mu).unwrap();
    let target = &c.at(mt.target(mu)).cat;
    for x in c.at(mt.source(mu)).cat.objects() {
        assert!(target.isomorphic(r.functor.on_obj(x), st.lock(dagger).on_obj(x)));
    }
}

#[test]
fn identity_right_adjoint_is_the_identity_up_to_iso() {
    let c = chat("idempotent_comonad");
    let mt = &c.diagram.mt;
    let st = Structure::new(&c, &Search::default()).unwrap();
    let p = mt.mode("p").unwrap();
    let r = st.radj(mt.identity(p)).unwrap();
    let cat = &c.at(p).cat;
    for x in cat.objects() {
        assert!(cat.isomorphic(r.functor.on_obj(x), x));
    }
}

#[test]
fn a_corrupted_counit_is_caught() {
    let c = chat("single_arrow");
    let mt = &c.diagram.mt;
    let st = Structure::new(&c, &Search::default()).unwrap();
    let mu = mt.mor("mu").unwrap();
    let r = st.radj(mu).unwrap();
    let mut t = r.transposer(&c);
    t.verify().unwrap();
    let b = t.b;
    let bogus: Vec<_> = b.objects().map(|x| b.id(x)).collect();
    let mut swapped = bogus.clone();
    swapped.reverse();
    t.counit = &swapped;
    assert!(t.verify().is_err());
}

#[test]
fn universal_property_covers_a_nontrivial_transformation() {
    for name in ["single_arrow", "idempotent_comonad"] {
        let c = chat(name);
        assert!(terminal_transformation(&c, &Search::default()).is_some(), "{name}");
    }
}

#[test]
fn families_satisfy_the_axioms_independently() {
    for name in bundled::DIAGRAM_NAMES {
        let c = chat(name);
        for x in &c.codex {
            for fam in &x.objects {
                verify_family(&c.diagram, &x.shape, fam).unwrap();
            }
        }
    }
}

#[test]
fn bundled_diagrams_satisfy_every_law() {
    for name in bundled::DIAGRAM_NAMES {
        let report = run_laws(&bundled::diagram(name), &Options::default()).unwrap();
        assert!(report.passed(), "{}", report.render());
        assert_eq!(report.outcomes.len(), Law::ALL.len());
    }
}

#[test]
fn non_lex_diagram_fails_with_a_counterexample() {
    let report = run_laws(&bundled::diagram("non_lex"), &Options::default()).unwrap();
    assert_eq!(report.status(Law::AssumptionLex), Some(LawStatus::Fail));
    let o = report.outcomes.iter().find(|o| o.law == Law::AssumptionLex).unwrap();
    assert!(o.counterexample.as_deref().unwrap().contains("mu"));
}

#[test]
fn a_single_law_can_be_selected() {
    let opts = Options {
        only: Some(Law::UpFf),
        ..Options::default()
    };
    let report = run_laws(&bundled::diagram("single_arrow"), &opts).unwrap();
    assert_eq!(report.outcomes.len(), 1);
    assert_eq!(report.outcomes[0].law, Law::UpFf);
}

#[test]
fn parallel_reports_match_sequential_ones() {
    let d = bundled::diagram("reflective");
    let one = run_laws(&d, &Options::default()).unwrap();
    let four = run_laws(&d, &Options { jobs: 4, ..Options::default() }).unwrap();
    assert_eq!(one, four);
}

#[test]
fn enumeration_respects_the_cap() {
    let d = bundled::diagram("meet_semilattice");
    match Chat::build(&d, 2) {
        Err(CodexError::Cat(crate::fincat::FinCatError::CapExceeded { estimate, cap })) => {
            assert_eq!(cap, 2);
            assert!(estimate > 2);
        }
        other => panic!("expected a cap error, got {other:?}"),
    }
}

#[test]
fn law_names_round_trip() {
    for l in Law::ALL {
        assert_eq!(l.name().parse::<Law>().unwrap(), l);
    }
    let mut sorted = Law::ALL.map(|l| l.name());
    sorted.sort();
    assert_eq!(sorted, Law::ALL.map(|l| l.name()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn verdicts_do_not_depend_on_search_order(seed in any::<u64>(), which in 0usize..7) {
        let names: Vec<&str> = bundled::DIAGRAM_NAMES.iter().copied().chain(["non_lex"]).collect();
        let d = bundled::diagram(names[which % names.len()]);
        let mut perm: Vec<ObjId> = (0..64).map(ObjId).collect();
        perm.shuffle(&mut StdRng::seed_from_u64(seed));
        let plain = run_laws(&d, &Options::default()).unwrap();
        let shuffled = run_laws(&d, &Options { search: Search::default().permuted(perm), ..Options::default() }).unwrap();
        let verdicts = |r: &LawReport| r.outcomes.iter().map(|o| (o.law, o.status)).collect::<Vec<_>>();
        prop_assert_eq!(verdicts(&plain), verdicts(&shuffled));
    }
}
