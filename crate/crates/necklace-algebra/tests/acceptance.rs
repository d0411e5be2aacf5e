//! The acceptance gate: every published invariant of the library checked
//! end to end on the worked examples and on seeded random suites, with one
//! pass/fail line per criterion (run with `--nocapture` to see all lines).
//!
//! Every comparison is exact — no tolerances anywhere.

use std::time::{Duration, Instant};

use necklace_algebra::coloring::{coproduct2, count_colorings};
use necklace_algebra::envelope::{q_hbar_map, UEWord};
use necklace_algebra::heightlink::{
    n_product, nelement_to_string, normalize, parse_nelement, parse_nelement_raw, Link,
};
use necklace_algebra::maps::{j_map, p_h_map, p_hbar_map, q_h_map};
use necklace_algebra::necklace::{
    bracket_lin, cobracket_lin, parse_lelement, Necklace, SymMonomial,
};
use necklace_algebra::quiver::Quiver;
use necklace_algebra::scalars::{rat, rat_int, LinComb, Poly2};
use necklace_algebra::tensoralg::TensorWord;
use necklace_algebra::verify::{run, Report, Suite};

/// One loop `a` at `v1` plus a framing arrow `b: v2 -> v1`.
fn jordan() -> Quiver {
    Quiver::parse(
        "vertex v1\n\
         vertex v2\n\
         arrow a: v1 -> v1\n\
         arrow b: v2 -> v1\n",
    )
    .unwrap()
}

/// Six vertices and seven arrows around an octagonal cycle; its coproduct
/// splits the eight-edge knot into two triangles.
fn octagon() -> Quiver {
    Quiver::parse(
        "vertex lu\n\
         vertex ld\n\
         vertex ml\n\
         vertex mr\n\
         vertex ru\n\
         vertex rd\n\
         arrow g: lu -> ld\n\
         arrow e: ml -> ld\n\
         arrow f: ml -> lu\n\
         arrow a: ml -> mr\n\
         arrow d: rd -> mr\n\
         arrow b: mr -> ru\n\
         arrow c: ru -> rd\n",
    )
    .unwrap()
}

/// The single necklace in a one-term combination.
fn neck(q: &Quiver, s: &str) -> Necklace {
    let x = parse_lelement(q, s).unwrap();
    assert_eq!(x.len(), 1, "`{s}` is one necklace");
    x.into_terms().into_keys().next().unwrap()
}

/// The single link in a one-term combination.
fn link(q: &Quiver, s: &str) -> Link {
    let x = parse_nelement_raw(q, s).unwrap();
    assert_eq!(x.len(), 1, "`{s}` is one link");
    x.into_terms().into_keys().next().unwrap()
}

struct Gate {
    failed: Vec<String>,
}

impl Gate {
    fn check(&mut self, criterion: &str, what: &str, ok: bool) {
        let verdict = if ok { "pass" } else { "FAIL" };
        println!("criterion {criterion}: {verdict} — {what}");
        if !ok {
            self.failed.push(format!("{criterion} ({what})"));
        }
    }
}

/// No failure in `report` matches one of `identities`, and none is an
/// unattributable internal error.
fn clean(report: &Report, identities: &[&str]) -> bool {
    report.failures.iter().all(|f| {
        !identities.contains(&f.identity.as_str()) && f.identity != "internal invariant"
    })
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate { failed: Vec::new() };
    let q = jordan();

    // --- 1: bracket of the loop with the framed four-cycle, under a second.
    let alpha = parse_lelement(&q, "a a*").unwrap();
    let beta = parse_lelement(&q, "b* b a* a*").unwrap();
    let t0 = Instant::now();
    let br = bracket_lin(&q, &alpha, &beta).unwrap();
    let elapsed = t0.elapsed();
    let ok = br == parse_lelement(&q, "2 * a* b* b a*").unwrap()
        && elapsed < Duration::from_secs(1);
    gate.check("1", "{a a*, b* b a* a*} = 2 a*b*ba* in < 1 s", ok);

    // --- 2: cobrackets of the same two necklaces. The nonzero value pairs
    // the cycle a*a* against the vertex at the source of the framing
    // arrow `b` (that is `v2`, the target of `b*`).
    let nu_alpha = cobracket_lin(&q, &alpha).unwrap();
    let mut expected = LinComb::zero();
    expected.add_term((neck(&q, "[v2]"), neck(&q, "a* a*")), Poly2::one());
    expected.add_term((neck(&q, "a* a*"), neck(&q, "[v2]")), -Poly2::one());
    let nu_beta = cobracket_lin(&q, &beta).unwrap();
    let mut v1_variant = LinComb::zero();
    v1_variant.add_term((neck(&q, "[v1]"), neck(&q, "a* a*")), Poly2::one());
    v1_variant.add_term((neck(&q, "a* a*"), neck(&q, "[v1]")), -Poly2::one());
    let ok = nu_alpha.is_zero() && nu_beta == expected && nu_beta != v1_variant;
    gate.check("2", "nu(a a*) = 0 and nu(b* b a* a*) = [v2] ^ a*a*", ok);

    // --- 3: the product commutator is 2h times a standard knot.
    let x = parse_nelement(&q, "(a,1)(a*,2)").unwrap();
    let y = parse_nelement(&q, "(b*,1)(b,2)(a*,3)(a*,4)").unwrap();
    let commutator =
        n_product(&q, &x, &y).unwrap() - n_product(&q, &y, &x).unwrap();
    let rhs = normalize(&q, &parse_nelement_raw(&q, "(a*,1)(b*,2)(b,3)(a*,4)").unwrap())
        .unwrap()
        .scale(&Poly2::monomial(rat_int(2), 1, 0));
    gate.check("3", "X*Y - Y*X = 2h * standard knot", commutator == rhs);

    // --- 4: two-slot coproducts, and the octagon's one nontrivial coloring.
    let x_link = link(&q, "(a,1)(a*,2)");
    let y_link = link(&q, "(a*,1)(a*,2)(b*,3)(b,4)");
    let unit = Link::empty();
    let mut dx_expected = LinComb::zero();
    dx_expected.add_term((x_link.clone(), unit.clone()), Poly2::one());
    dx_expected.add_term((unit.clone(), x_link.clone()), Poly2::one());
    dx_expected.add_term((link(&q, "[v1]"), link(&q, "[v1]")), Poly2::hbar());
    let dx_ok = coproduct2(&q, &x).unwrap() == dx_expected;

    let mut dy_expected = LinComb::zero();
    dy_expected.add_term((y_link.clone(), unit.clone()), Poly2::one());
    dy_expected.add_term((unit.clone(), y_link.clone()), Poly2::one());
    dy_expected.add_term((link(&q, "(a*,1)(a*,2)"), link(&q, "[v2]")), -Poly2::hbar());
    let dy_ok = coproduct2(&q, &y).unwrap() == dy_expected;

    let oq = octagon();
    let ox = parse_nelement_raw(&oq, "(a,1)(d*,2)(c*,3)(b*,4)(a*,5)(f,6)(g,7)(e*,9)")
        .unwrap();
    let ox_link = link(&oq, "(a,1)(d*,2)(c*,3)(b*,4)(a*,5)(f,6)(g,7)(e*,9)");
    // Exactly one coloring beyond the two one-sided ones, and it carries a
    // single matched pair with weight +hbar (one extra component in the
    // parts), splitting the octagon into the two triangles.
    let count_ok = count_colorings(&oq, &ox_link, 2).unwrap() == 3;
    let nx = normalize(&oq, &ox).unwrap();
    let mut trivial = LinComb::zero();
    for (l, c) in nx.iter() {
        trivial.add_term((l.clone(), unit.clone()), c.clone());
        trivial.add_term((unit.clone(), l.clone()), c.clone());
    }
    let nontrivial = coproduct2(&oq, &ox).unwrap() - trivial;
    let left = normalize(&oq, &parse_nelement_raw(&oq, "(f,1)(g,2)(e*,3)").unwrap()).unwrap();
    let right = normalize(&oq, &parse_nelement_raw(&oq, "(d*,1)(c*,2)(b*,3)").unwrap()).unwrap();
    let mut split_expected = LinComb::zero();
    for (l, cl) in left.iter() {
        for (r, cr) in right.iter() {
            split_expected.add_term((l.clone(), r.clone()), &Poly2::hbar() * cl * cr);
        }
    }
    let octagon_ok = nontrivial == split_expected;
    gate.check(
        "4",
        "Delta(X), Delta(Y), and the octagon's single two-sided coloring",
        dx_ok && dy_ok && count_ok && octagon_ok,
    );

    // --- 5: the expansion, both reductions, and their classical collapse.
    let v1 = neck(&q, "[v1]");
    let v2 = neck(&q, "[v2]");
    let aa = neck(&q, "a a*");
    let beta_neck = neck(&q, "b* b a* a*");

    let mut jx_expected = LinComb::zero();
    jx_expected.add_term(TensorWord(vec![aa.clone()]), Poly2::one());
    jx_expected.add_term(TensorWord(vec![v1.clone(), v1.clone()]), Poly2::hbar());
    let jx_ok = j_map(&q, &x).unwrap() == jx_expected;

    // The only correction word is a*a* then the vertex, with weight -hbar.
    let mut jy_expected = LinComb::zero();
    jy_expected.add_term(TensorWord(vec![beta_neck.clone()]), Poly2::one());
    jy_expected.add_term(
        TensorWord(vec![neck(&q, "a* a*"), v2.clone()]),
        -Poly2::hbar(),
    );
    let jy_ok = j_map(&q, &y).unwrap() == jy_expected;

    let mut px_expected = LinComb::zero();
    px_expected.add_term(SymMonomial::single(aa.clone()), Poly2::one());
    px_expected.add_term(
        SymMonomial::new(vec![v1.clone(), v1.clone()]),
        Poly2::monomial(rat(1, 2), 0, 1),
    );
    let px_ok = p_hbar_map(&q, &x).unwrap() == px_expected;

    let mut py_expected = LinComb::zero();
    py_expected.add_term(SymMonomial::single(beta_neck.clone()), Poly2::one());
    py_expected.add_term(
        SymMonomial::new(vec![neck(&q, "a* a*"), v2.clone()]),
        Poly2::monomial(rat(-1, 2), 0, 1),
    );
    let py_ok = p_hbar_map(&q, &y).unwrap() == py_expected;

    let phy_ok = p_h_map(&q, &y).unwrap()
        == LinComb::from_basis(UEWord(vec![beta_neck.clone()]));

    let classical_x = LinComb::from_basis(SymMonomial::single(aa.clone()));
    let classical_y = LinComb::from_basis(SymMonomial::single(beta_neck.clone()));
    let collapse_ok = q_h_map(&p_hbar_map(&q, &x).unwrap()) == classical_x
        && q_hbar_map(&p_h_map(&q, &x).unwrap()) == classical_x
        && q_h_map(&p_hbar_map(&q, &y).unwrap()) == classical_y
        && q_hbar_map(&p_h_map(&q, &y).unwrap()) == classical_y;

    gate.check(
        "5",
        "J, p_hbar, p_h on X and Y, and both classical collapses agree",
        jx_ok && jy_ok && px_ok && py_ok && phy_ok && collapse_ok,
    );

    // --- 6: seeded property suites, >= 200 samples, edge budget 8.
    let samples = 200;
    let seed = 1;
    let edges = 8;
    let t6 = Instant::now();
    let lie = run(Suite::LieBialgebra, samples, seed, edges);
    let bialg = run(Suite::NqBialgebra, samples, seed, edges);
    let conf = run(Suite::Confluence, samples, seed, edges);
    let quant = run(Suite::Quantization, samples, seed, edges);
    let coquant = run(Suite::Coquantization, samples, seed, edges);
    let diag = run(Suite::Diagram, samples, seed, edges);
    let suite_time = t6.elapsed();

    gate.check("6a", "Lie bialgebra axioms", lie.passed);
    gate.check("6b", "link bialgebra axioms", bialg.passed);
    gate.check("6c", "skein confluence across 50 schedules per sample", conf.passed);
    gate.check(
        "6d",
        "bracket congruence of the expansion",
        clean(&quant, &["bracket congruence", "commutator divisibility"]),
    );
    gate.check(
        "6e",
        "cobracket congruence of the reduction",
        clean(
            &coquant,
            &["cobracket congruence", "antisymmetrized coproduct divisibility"],
        ),
    );
    gate.check(
        "6f",
        "expansion lands in the ladder subcoalgebra",
        clean(&quant, &["ladder membership of the expansion"]),
    );
    gate.check("6g", "reduction square commutes", diag.passed);
    gate.check(
        "6h",
        "both reductions kill the opposite parameter",
        clean(&quant, &["join-reducedness"]) && clean(&coquant, &["split-reducedness"]),
    );
    gate.check(
        "6 (runtime)",
        "property suites finish within the five-minute budget",
        suite_time < Duration::from_secs(300),
    );

    // --- 7: setting the join parameter to 1 commutes with both operations.
    let schedler = run(Suite::SchedlerOne, 50, seed, edges);
    gate.check("7", "h = 1 specialization commutes with * and Delta", schedler.passed);

    assert!(
        gate.failed.is_empty(),
        "acceptance criteria failed: {:?}\nexample inputs: X = {}, Y = {}",
        gate.failed,
        nelement_to_string(&q, &x),
        nelement_to_string(&q, &y),
    );
}
