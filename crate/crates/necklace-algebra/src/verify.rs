//! Seeded property suites over randomly generated quivers, necklaces, and
//! links, with JSON-serializable reports.
//!
//! Every suite draws its own random quivers (at most 3 vertices and 4
//! arrows) and elements from a deterministic stream, so a (suite, seed,
//! samples, max-edges) quadruple always checks the same instances. A
//! failing identity is recorded with printable inputs and both sides.

use serde::Serialize;

use crate::coloring::{coproduct, coproduct2};
use crate::heightlink::{
    n_product, n_product_with, nelement_to_string, normalize, normalize_with,
    EngineParams, Link, NElement,
};
use crate::maps::{
    check_coquantization, check_diagram, check_quantization, check_xi_nilpotent,
    j_map, p_h_map, p_hbar_map,
};
use crate::necklace::{
    bracket, bracket_lin, cobracket, cobracket_lin, lelement_to_string, LElement,
    LPair, Necklace,
};
use crate::quiver::Quiver;
use crate::sampling::{random_link, random_necklace, random_quiver, rng};
use crate::scalars::{rat_int, LinComb, Poly2};
use crate::tensoralg::is_in_ladder;
use crate::{Error, Result};

/// The available property suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Antisymmetry, Jacobi, the cocycle identity, and co-Jacobi for the
    /// necklace bracket and cobracket.
    LieBialgebra,
    /// Associativity, multiplicativity of the coproduct, and
    /// coassociativity for the link algebra.
    NqBialgebra,
    /// The bracket congruence mod the join parameter, ladder membership of
    /// the expansion, and join-reducedness.
    Quantization,
    /// The cobracket congruence mod the split parameter and
    /// split-reducedness.
    Coquantization,
    /// Commutativity of the reduction square and nilpotency of the lift
    /// defect.
    Diagram,
    /// Agreement of random exchange schedules with the canonical one.
    Confluence,
    /// Setting the join parameter to 1 commutes with product and coproduct.
    SchedlerOne,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::LieBialgebra => "lie-bialgebra",
            Suite::NqBialgebra => "nq-bialgebra",
            Suite::Quantization => "quantization",
            Suite::Coquantization => "coquantization",
            Suite::Diagram => "diagram",
            Suite::Confluence => "confluence",
            Suite::SchedlerOne => "schedler-h1",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        [
            Suite::LieBialgebra,
            Suite::NqBialgebra,
            Suite::Quantization,
            Suite::Coquantization,
            Suite::Diagram,
            Suite::Confluence,
            Suite::SchedlerOne,
        ]
        .into_iter()
        .find(|s| s.name() == name)
    }

    /// One-line statement of what the suite checks.
    pub fn identity(self) -> &'static str {
        match self {
            Suite::LieBialgebra => {
                "bracket antisymmetry and Jacobi; cobracket cocycle and co-Jacobi"
            }
            Suite::NqBialgebra => {
                "product associativity; coproduct multiplicativity and coassociativity"
            }
            Suite::Quantization => {
                "J((x*y - y*x)/h) = {J(x), J(y)}; im J in the ladder; p_hbar(h*x) = 0"
            }
            Suite::Coquantization => {
                "(p_h (x) p_h)((delta - perm delta)(x)/hbar) = nu(p_h(x)); p_h(hbar*x) = 0"
            }
            Suite::Diagram => "q_h∘p_hbar = q_hbar∘p_h = p; lift defect nilpotent",
            Suite::Confluence => "random exchange schedules agree with the canonical one",
            Suite::SchedlerOne => "h=1 specialization commutes with product and coproduct",
        }
    }
}

/// One failed identity instance.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub sample: u64,
    pub identity: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one suite run.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub identity: String,
    pub seed: u64,
    pub samples: u64,
    pub max_edges: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

/// Run a suite; failures are collected, never panicked.
pub fn run(suite: Suite, samples: u64, seed: u64, max_edges: usize) -> Report {
    let mut failures = Vec::new();
    let mut r = rng(seed ^ 0x6e65636b6c616365);
    for sample in 0..samples {
        let result = match suite {
            Suite::LieBialgebra => lie_bialgebra_sample(sample, &mut r, max_edges, &mut failures),
            Suite::NqBialgebra => nq_bialgebra_sample(sample, &mut r, max_edges, &mut failures),
            Suite::Quantization => quantization_sample(sample, &mut r, max_edges, &mut failures),
            Suite::Coquantization => {
                coquantization_sample(sample, &mut r, max_edges, &mut failures)
            }
            Suite::Diagram => diagram_sample(sample, &mut r, max_edges, &mut failures),
            Suite::Confluence => confluence_sample(sample, &mut r, max_edges, &mut failures),
            Suite::SchedlerOne => schedler_sample(sample, &mut r, max_edges, &mut failures),
        };
        if let Err(e) = result {
            failures.push(Failure {
                sample,
                identity: "internal invariant".to_string(),
                inputs: Vec::new(),
                lhs: e.to_string(),
                rhs: String::new(),
            });
        }
    }
    Report {
        schema: 1,
        suite: suite.name().to_string(),
        identity: suite.identity().to_string(),
        seed,
        samples,
        max_edges,
        passed: failures.is_empty(),
        failures,
    }
}

type Rng = rand_chacha::ChaCha8Rng;

fn fail(
    failures: &mut Vec<Failure>,
    sample: u64,
    identity: &str,
    inputs: Vec<String>,
    lhs: String,
    rhs: String,
) {
    failures.push(Failure { sample, identity: identity.to_string(), inputs, lhs, rhs });
}

/// Adjoint action of a necklace on a tensor square, slotwise.
fn act(q: &Quiver, x: &Necklace, pair: &LPair) -> Result<LPair> {
    let mut out: LPair = LinComb::zero();
    for ((u, w), c) in pair.iter() {
        for (n, cn) in bracket(q, x, u)?.iter() {
            out.add_term((n.clone(), w.clone()), c * cn);
        }
        for (n, cn) in bracket(q, x, w)?.iter() {
            out.add_term((u.clone(), n.clone()), c * cn);
        }
    }
    Ok(out)
}

fn pair_to_string(q: &Quiver, x: &LPair) -> String {
    x.display_with(|(a, b)| format!("{} (x) {}", a.display(q), b.display(q)))
}

fn lie_bialgebra_sample(
    sample: u64,
    r: &mut Rng,
    max_edges: usize,
    failures: &mut Vec<Failure>,
) -> Result<()> {
    let q = random_quiver(r);
    let x = random_necklace(&q, r, max_edges);
    let y = random_necklace(&q, r, max_edges);
    let z = random_necklace(&q, r, max_edges);
    let inputs = || vec![q.to_string(), x.display(&q), y.display(&q), z.display(&q)];

    let xy = bracket(&q, &x, &y)?;
    let anti = &xy + &bracket(&q, &y, &x)?;
    if !anti.is_zero() {
        fail(failures, sample, "antisymmetry", inputs(), lelement_to_string(&q, &anti), "0".into());
    }

    let lift = |n: &Necklace| -> LElement { LinComb::from_basis(n.clone()) };
    let jac = bracket_lin(&q, &lift(&x), &bracket(&q, &y, &z)?)?
        + bracket_lin(&q, &lift(&y), &bracket(&q, &z, &x)?)?
        + bracket_lin(&q, &lift(&z), &xy)?;
    if !jac.is_zero() {
        fail(failures, sample, "jacobi", inputs(), lelement_to_string(&q, &jac), "0".into());
    }

    // Cocycle: nu({x,y}) = x.nu(y) - y.nu(x).
    let lhs = cobracket_lin(&q, &xy)?;
    let rhs = act(&q, &x, &cobracket(&q, &y)?)? - act(&q, &y, &cobracket(&q, &x)?)?;
    if lhs != rhs {
        fail(
            failures,
            sample,
            "cocycle",
            inputs(),
            pair_to_string(&q, &lhs),
            pair_to_string(&q, &rhs),
        );
    }

    // Co-Jacobi: the cyclic sum of (id (x) nu) nu vanishes.
    let mut cyc: LinComb<(Necklace, Necklace, Necklace)> = LinComb::zero();
    for ((a, b), c) in cobracket(&q, &x)?.iter() {
        for ((p1, p2), d) in cobracket(&q, b)?.iter() {
            let t = (a.clone(), p1.clone(), p2.clone());
            cyc.add_term(t.clone(), c * d);
            cyc.add_term((t.2.clone(), t.0.clone(), t.1.clone()), c * d);
            cyc.add_term((t.1, t.2, t.0), c * d);
        }
    }
    if !cyc.is_zero() {
        let s = cyc.display_with(|(a, b, c)| {
            format!("{} (x) {} (x) {}", a.display(&q), b.display(&q), c.display(&q))
        });
        fail(failures, sample, "co-jacobi", inputs(), s, "0".into());
    }
    Ok(())
}

/// Product of two slotwise combinations of pairs of links.
fn pair_product_links(
    q: &Quiver,
    x: &LinComb<(Link, Link)>,
    y: &LinComb<(Link, Link)>,
) -> Result<LinComb<(Link, Link)>> {
    let mut out = LinComb::zero();
    for ((a1, a2), c) in x.iter() {
        for ((b1, b2), d) in y.iter() {
            let left = n_product(q, &LinComb::from_basis(a1.clone()), &LinComb::from_basis(b1.clone()))?;
            let right = n_product(q, &LinComb::from_basis(a2.clone()), &LinComb::from_basis(b2.clone()))?;
            for (l, cl) in left.iter() {
                for (rr, cr) in right.iter() {
                    out.add_term((l.clone(), rr.clone()), c * d * cl * cr);
                }
            }
        }
    }
    Ok(out)
}

fn link_pair_to_string(q: &Quiver, x: &LinComb<(Link, Link)>) -> String {
    x.display_with(|(a, b)| format!("{} (x) {}", a.display(q), b.display(q)))
}

fn nq_bialgebra_sample(
    sample: u64,
    r: &mut Rng,
    max_edges: usize,
    failures: &mut Vec<Failure>,
) -> Result<()> {
    let q = random_quiver(r);
    let third = (max_edges / 3).max(1);
    let half = (max_edges / 2).max(1);

    // Associativity on three links within the edge budget.
    let x = normalize(&q, &LinComb::from_basis(random_link(&q, r, third)?))?;
    let y = normalize(&q, &LinComb::from_basis(random_link(&q, r, third)?))?;
    let z = normalize(&q, &LinComb::from_basis(random_link(&q, r, third)?))?;
    let assoc_l = n_product(&q, &n_product(&q, &x, &y)?, &z)?;
    let assoc_r = n_product(&q, &x, &n_product(&q, &y, &z)?)?;
    if assoc_l != assoc_r {
        fail(
            failures,
            sample,
            "associativity",
            vec![
                q.to_string(),
                nelement_to_string(&q, &x),
                nelement_to_string(&q, &y),
                nelement_to_string(&q, &z),
            ],
            nelement_to_string(&q, &assoc_l),
            nelement_to_string(&q, &assoc_r),
        );
    }

    // Multiplicativity of the coproduct.
    let u = normalize(&q, &LinComb::from_basis(random_link(&q, r, half)?))?;
    let w = normalize(&q, &LinComb::from_basis(random_link(&q, r, half)?))?;
    let lhs = coproduct2(&q, &n_product(&q, &u, &w)?)?;
    let rhs = pair_product_links(&q, &coproduct2(&q, &u)?, &coproduct2(&q, &w)?)?;
    if lhs != rhs {
        fail(
            failures,
            sample,
            "coproduct multiplicativity",
            vec![q.to_string(), nelement_to_string(&q, &u), nelement_to_string(&q, &w)],
            link_pair_to_string(&q, &lhs),
            link_pair_to_string(&q, &rhs),
        );
    }

    // Coassociativity, capped at six occurrences.
    let v = normalize(&q, &LinComb::from_basis(random_link(&q, r, max_edges.min(6))?))?;
    let threefold = coproduct(&q, &v, 3)?;
    let two = coproduct(&q, &v, 2)?;
    let mut left: LinComb<Vec<Link>> = LinComb::zero();
    let mut right: LinComb<Vec<Link>> = LinComb::zero();
    for (slots, c) in two.iter() {
        for (ab, d) in coproduct(&q, &LinComb::from_basis(slots[0].clone()), 2)?.iter() {
            left.add_term(vec![ab[0].clone(), ab[1].clone(), slots[1].clone()], c * d);
        }
        for (bc, d) in coproduct(&q, &LinComb::from_basis(slots[1].clone()), 2)?.iter() {
            right.add_term(vec![slots[0].clone(), bc[0].clone(), bc[1].clone()], c * d);
        }
    }
    let slots_str = |x: &LinComb<Vec<Link>>| {
        x.display_with(|slots| {
            slots.iter().map(|l| l.display(&q)).collect::<Vec<_>>().join(" | ")
        })
    };
    if threefold != left || threefold != right {
        fail(
            failures,
            sample,
            "coassociativity",
            vec![q.to_string(), nelement_to_string(&q, &v)],
            slots_str(&threefold),
            format!("{} / {}", slots_str(&left), slots_str(&right)),
        );
    }
    Ok(())
}

fn quantization_sample(
    sample: u64,
    r: &mut Rng,
    max_edges: usize,
    failures: &mut Vec<Failure>,
) -> Result<()> {
    let q = random_quiver(r);
    let half = (max_edges / 2).max(1);
    let x = normalize(&q, &LinComb::from_basis(random_link(&q, r, half)?))?;
    let y = normalize(&q, &LinComb::from_basis(random_link(&q, r, half)?))?;
    let inputs = || vec![q.to_string(), nelement_to_string(&q, &x), nelement_to_string(&q, &y)];

    match check_quantization(&q, &x, &y) {
        Ok((lhs, rhs)) => {
            if lhs != rhs {
                fail(
                    failures,
                    sample,
                    "bracket congruence",
                    inputs(),
                    lhs.display_with(|w| w.display(&q)),
                    rhs.display_with(|w| w.display(&q)),
                );
            }
        }
        Err(Error::NotDivisible(m)) => {
            fail(failures, sample, "commutator divisibility", inputs(), m, "0 mod h".into());
        }
        Err(e) => return Err(e),
    }

    let jx = j_map(&q, &x)?;
    if !is_in_ladder(&q, &jx)? {
        fail(
            failures,
            sample,
            "ladder membership of the expansion",
            inputs(),
            jx.display_with(|w| w.display(&q)),
            "a ladder element".into(),
        );
    }

    let reduced = p_hbar_map(&q, &x.scale(&Poly2::h()))?;
    if !reduced.is_zero() {
        fail(
            failures,
            sample,
            "join-reducedness",
            inputs(),
            reduced.display_with(|m| m.display(&q)),
            "0".into(),
        );
    }
    Ok(())
}

fn coquantization_sample(
    sample: u64,
    r: &mut Rng,
    max_edges: usize,
    failures: &mut Vec<Failure>,
) -> Result<()> {
    let q = random_quiver(r);
    let x = normalize(&q, &LinComb::from_basis(random_link(&q, r, max_edges)?))?;
    let inputs = || vec![q.to_string(), nelement_to_string(&q, &x)];

    match check_coquantization(&q, &x) {
        Ok((lhs, rhs)) => {
            if lhs != rhs {
                fail(
                    failures,
                    sample,
                    "cobracket congruence",
                    inputs(),
                    lhs.display_with(|(a, b)| {
                        format!("{} (x) {}", a.display(&q), b.display(&q))
                    }),
                    rhs.display_with(|(a, b)| {
                        format!("{} (x) {}", a.display(&q), b.display(&q))
                    }),
                );
            }
        }
        Err(Error::NotDivisible(m)) => {
            fail(
                failures,
                sample,
                "antisymmetrized coproduct divisibility",
                inputs(),
                m,
                "0 mod hbar".into(),
            );
        }
        Err(e) => return Err(e),
    }

    let reduced = p_h_map(&q, &x.scale(&Poly2::hbar()))?;
    if !reduced.is_zero() {
        fail(
            failures,
            sample,
            "split-reducedness",
            inputs(),
            reduced.display_with(|w| w.display(&q)),
            "0".into(),
        );
    }
    Ok(())
}

fn diagram_sample(
    sample: u64,
    r: &mut Rng,
    max_edges: usize,
    failures: &mut Vec<Failure>,
) -> Result<()> {
    let q = random_quiver(r);
    let link = random_link(&q, r, max_edges)?;
    let x: NElement = normalize(&q, &LinComb::from_basis(link.clone()))?;
    let inputs = || vec![q.to_string(), link.display(&q)];

    let (a, b, c) = check_diagram(&q, &x)?;
    if a != b || a != c {
        fail(
            failures,
            sample,
            "reduction square",
            inputs(),
            format!(
                "{} / {}",
                a.display_with(|m| m.display(&q)),
                b.display_with(|m| m.display(&q))
            ),
            c.display_with(|m| m.display(&q)),
        );
    }

    if !check_xi_nilpotent(&q, &link)? {
        fail(
            failures,
            sample,
            "lift defect nilpotency",
            inputs(),
            "defect survived the crossing bound".into(),
            "0".into(),
        );
    }
    Ok(())
}

/// Random exchange schedules tried against the canonical one per sample.
const SCHEDULES_PER_SAMPLE: usize = 50;

fn confluence_sample(
    sample: u64,
    r: &mut Rng,
    max_edges: usize,
    failures: &mut Vec<Failure>,
) -> Result<()> {
    let q = random_quiver(r);
    let link = random_link(&q, r, max_edges)?;
    let x: LinComb<Link> = LinComb::from_basis(link.clone());
    let reference = normalize(&q, &x)?;
    for _ in 0..SCHEDULES_PER_SAMPLE {
        let scheduled = normalize_with(&q, &x, &EngineParams::default(), Some(r))?;
        if scheduled != reference {
            fail(
                failures,
                sample,
                "schedule independence",
                vec![q.to_string(), link.display(&q)],
                nelement_to_string(&q, &scheduled),
                nelement_to_string(&q, &reference),
            );
            break;
        }
    }
    Ok(())
}

fn schedler_sample(
    sample: u64,
    r: &mut Rng,
    max_edges: usize,
    failures: &mut Vec<Failure>,
) -> Result<()> {
    let q = random_quiver(r);
    let half = (max_edges / 2).max(1);
    let x: LinComb<Link> = LinComb::from_basis(random_link(&q, r, half)?);
    let y: LinComb<Link> = LinComb::from_basis(random_link(&q, r, half)?);
    let one = EngineParams { join_scale: Poly2::one(), split_scale: Poly2::hbar() };
    let at_one = |c: &Poly2| c.specialize(Some(&rat_int(1)), None);
    let inputs = || {
        vec![
            q.to_string(),
            nelement_to_string(&q, &x),
            nelement_to_string(&q, &y),
        ]
    };

    // Specialize after multiplying vs multiply in the specialized engine.
    let after = n_product(&q, &x, &y)?.map_coeff(at_one);
    let during = n_product_with(&q, &x, &y, &one)?;
    if after != during {
        fail(
            failures,
            sample,
            "product specialization",
            inputs(),
            nelement_to_string(&q, &after),
            nelement_to_string(&q, &during),
        );
    }

    // Same for the coproduct.
    let after = coproduct(&q, &x, 2)?.map_coeff(at_one);
    let during = crate::coloring::coproduct_with(&q, &x, 2, &one)?;
    let slots_str = |z: &LinComb<Vec<Link>>| {
        z.display_with(|slots| {
            slots.iter().map(|l| l.display(&q)).collect::<Vec<_>>().join(" | ")
        })
    };
    if after != during {
        fail(
            failures,
            sample,
            "coproduct specialization",
            inputs(),
            slots_str(&after),
            slots_str(&during),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::LieBialgebra,
            Suite::NqBialgebra,
            Suite::Quantization,
            Suite::Coquantization,
            Suite::Diagram,
            Suite::Confluence,
            Suite::SchedlerOne,
        ] {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nonsense"), None);
    }

    #[test]
    fn small_runs_pass_and_serialize() {
        for s in [Suite::LieBialgebra, Suite::Confluence] {
            let report = run(s, 5, 11, 4);
            assert!(report.passed, "{:?} failed: {:?}", s, report.failures);
            let json = serde_json::to_value(&report).unwrap();
            assert_eq!(json["schema"], 1);
            assert_eq!(json["samples"], 5);
            assert!(json["failures"].as_array().unwrap().is_empty());
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run(Suite::Diagram, 3, 42, 4);
        let b = run(Suite::Diagram, 3, 42, 4);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
