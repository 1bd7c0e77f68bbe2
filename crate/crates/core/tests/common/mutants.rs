//! One targeted corruption per claim, each applied to a stage that otherwise passes.

use std::sync::Arc;

use suralg::hierarchy::{sa_stage, st_stage, verify_claims, Algebra, Stage};
use suralg::sigma::StructureBuilder;
use suralg::{Cut, Elem};

pub const ZERO: &str = "<|>";
pub const ONE: &str = "<<|>|>";
pub const MINUS_ONE: &str = "<|<|>>";
pub const TWO: &str = "<<<|>|>|>";

pub fn el(stage: &Stage, term: &str) -> Elem {
    stage.find(term).unwrap_or_else(|| panic!("{term} is not in the stage"))
}

pub fn rebuild(stage: &Stage, edit: impl FnOnce(&mut StructureBuilder)) -> Stage {
    let mut b = stage.structure().to_builder();
    edit(&mut b);
    stage.with_structure(b.build().expect("mutant builds")).expect("mutant stage")
}

pub fn reranked(stage: &Stage, term: &str, rank: u32) -> Stage {
    let mut ranks = stage.ranks().to_vec();
    ranks[el(stage, term).index()] = rank;
    stage.with_ranks(ranks).expect("mutant stage")
}

/// `st_stage(2)` plus a day-1 element with `0` on both sides of its term.
fn st_with_inverted_term() -> Stage {
    let s = st_stage(2).unwrap();
    let mut b = s.structure().to_builder();
    let x = b.element(format!("<{ZERO}|{ZERO}>"));
    b.neg_pair(x, x);
    let mut ranks = s.ranks().to_vec();
    ranks.push(1);
    Stage::from_labeled(Algebra::St, Arc::new(b.build().unwrap()), ranks).unwrap()
}

fn st_with_reversed_pair() -> Stage {
    let s = st_stage(2).unwrap();
    let (one, m1) = (el(&s, ONE), el(&s, MINUS_ONE));
    rebuild(&s, |b| {
        b.lt(one, m1);
    })
}

/// The mutant aimed at the check called `name`.
pub fn mutant(name: &str) -> Stage {
    let sa1 = || sa_stage(1).unwrap();
    let sa2 = || sa_stage(2).unwrap();
    match name {
        "Claim 3" => rebuild(&sa2(), |b| {
            b.remove_t(&Cut::new([], []));
        }),
        "Claim 4" => {
            let s = sa2();
            let (z, one, m1) = (el(&s, ZERO), el(&s, ONE), el(&s, MINUS_ONE));
            rebuild(&s, |b| {
                b.t(Cut::new([z], []), m1).t(Cut::new([], [z]), one);
            })
        }
        "Claim 5" | "Claim 13" => reranked(&sa2(), ONE, 2),
        "Claim 6" => reranked(&sa2(), ZERO, 1),
        "Claim 7" => {
            let s = sa1();
            let (one, m1) = (el(&s, ONE), el(&s, MINUS_ONE));
            rebuild(&s, |b| {
                b.lt(m1, one);
            })
        }
        "Claim 8" => {
            let s = sa2();
            let (z, one, m1) = (el(&s, ZERO), el(&s, ONE), el(&s, MINUS_ONE));
            rebuild(&s, |b| {
                b.lt(m1, one).t(Cut::new([m1], [one]), z);
            })
        }
        "Claim 9" => {
            let s = sa1();
            let (z, m1) = (el(&s, ZERO), el(&s, MINUS_ONE));
            rebuild(&s, |b| {
                b.remove_lt(m1, z);
            })
        }
        "Claim 10" => {
            let s = sa2();
            let (two, m1) = (el(&s, TWO), el(&s, MINUS_ONE));
            rebuild(&s, |b| {
                b.lt(m1, two);
            })
        }
        "Claim 11" => {
            let s = sa1();
            let z = el(&s, ZERO);
            rebuild(&s, |b| {
                b.t(Cut::new([z], []), z);
            })
        }
        "Claim 12" => {
            let s = sa1();
            let (z, one) = (el(&s, ZERO), el(&s, ONE));
            let m = rebuild(&s, |b| {
                b.lt(one, z);
            });
            reranked(&m, ONE, 0)
        }
        "Claim 14" => {
            let s = sa1();
            let (z, one, m1) = (el(&s, ZERO), el(&s, ONE), el(&s, MINUS_ONE));
            rebuild(&s, |b| {
                b.neg_pair(one, one).neg_pair(m1, m1).neg_pair(z, z);
            })
        }
        "Fact 2(g)" | "Fact 2(h)" | "Fact 2(i)" | "Fact 2(m)" => st_with_inverted_term(),
        "Fact 2(j)" | "Fact 2(k)" | "Fact 2(l)" | "Fact 2(n)" => st_with_reversed_pair(),
        "Fact 2(o)" => reranked(&st_stage(2).unwrap(), ZERO, 1),
        other => panic!("no mutant for {other}"),
    }
}

pub const CLAIMS: [&str; 12] = [
    "Claim 3", "Claim 4", "Claim 5", "Claim 6", "Claim 7", "Claim 8", "Claim 9", "Claim 10",
    "Claim 11", "Claim 12", "Claim 13", "Claim 14",
];

pub const FACT2: [&str; 9] = [
    "Fact 2(g)", "Fact 2(h)", "Fact 2(i)", "Fact 2(j)", "Fact 2(k)", "Fact 2(l)", "Fact 2(m)",
    "Fact 2(n)", "Fact 2(o)",
];

/// Whether the check `name` fails on its mutant and names a witness.
pub fn caught(name: &str) -> Result<(), String> {
    let report = verify_claims(&mutant(name)).map_err(|e| e.to_string())?;
    let v = report
        .verdicts
        .iter()
        .find(|v| v.name == name)
        .ok_or_else(|| format!("{name} not reported"))?;
    match (v.passed, &v.witness) {
        (false, Some(_)) => Ok(()),
        (false, None) => Err(format!("{name} failed without a witness")),
        (true, _) => Err(format!("{name} passed on its mutant")),
    }
}
