//! Deterministic law suites: coherence, completeness, normalization,
//! dinaturality, quotient counting, functoriality and counit soundness.
//!
//! Every family runs from a seeded generator, so a report is a pure function
//! of (seed, cases, max carrier). Failures carry enough context to replay.

use crate::context::{self, Context, SlideDirection, SlideFactorization, SplicedElem};
use crate::contour::{self, ContourInterp, Element, Equation, Presentation, SideObject};
use crate::duosplice::{self, tree, Elem, ParSplit, ParUnit};
use crate::error::Result;
use crate::handshake;
use crate::lens::{self, Lens};
use crate::object::{Atom, ObjectList};
use crate::rational::Rational;
use crate::splice::{splice_alpha, splice_lambda, splice_rho, HoleType, NHoleSplice};
use crate::theory::{enumerate_finfn_hom, FinFnMorphism, Morphism, TheoryKind};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct LawConfig {
    pub seed: u64,
    pub cases: usize,
    pub max_carrier: usize,
    /// Backends exercised by the theory-parametric families.
    pub theories: Vec<TheoryKind>,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            seed: 17,
            cases: 300,
            max_carrier: 2,
            theories: vec![TheoryKind::FinFn, TheoryKind::FinStoch],
        }
    }
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub name: String,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    pub warnings: Vec<String>,
}

impl FamilyReport {
    fn new(name: &str) -> Self {
        FamilyReport {
            name: name.into(),
            cases: 0,
            checks: 0,
            failures: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, label: impl Fn() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(label());
        }
    }

    fn run(&mut self, label: &str, r: Result<()>) {
        self.checks += 1;
        if let Err(e) = r {
            self.failures.push(format!("{label}: {e}"));
        }
    }
}

/// Renders reports as a stable text block, one line per family.
pub fn render(reports: &[FamilyReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        out.push_str(&format!(
            "{status}  {:<26} cases {:>6}  checks {:>8}  failures {}\n",
            r.name,
            r.cases,
            r.checks,
            r.failures.len()
        ));
        for w in &r.warnings {
            out.push_str(&format!("      warning: {w}\n"));
        }
        for f in r.failures.iter().take(5) {
            out.push_str(&format!("      failure: {f}\n"));
        }
    }
    out
}

pub fn run_all(cfg: &LawConfig) -> Vec<FamilyReport> {
    vec![
        theory_laws(cfg),
        splice_coherence(cfg),
        produoidal_coherence(cfg),
        context_operations(cfg),
        normalization(cfg),
        dinaturality(cfg),
        cartesian_lens_quotient(),
        send_get_functors(cfg),
        counit_soundness(cfg),
    ]
}

// ---------------------------------------------------------------------------
// Random generation
// ---------------------------------------------------------------------------

struct Gen {
    rng: ChaCha8Rng,
    max_carrier: usize,
    fresh: usize,
}

impl Gen {
    fn new(seed: u64, max_carrier: usize) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), max_carrier: max_carrier.max(1), fresh: 0 }
    }

    fn obj(&mut self) -> ObjectList {
        let len = self.rng.gen_range(0..=2);
        let atoms = (0..len)
            .map(|_| {
                self.fresh += 1;
                Atom::new(format!("o{}", self.fresh), self.rng.gen_range(1..=self.max_carrier))
            })
            .collect();
        ObjectList(atoms)
    }

    fn pair(&mut self) -> (ObjectList, ObjectList) {
        (self.obj(), self.obj())
    }

    fn table(&mut self, dom: &ObjectList, cod: &ObjectList) -> Morphism {
        let bound = cod.carrier();
        let table = (0..dom.carrier()).map(|_| self.rng.gen_range(0..bound)).collect();
        Morphism::FinFn(FinFnMorphism::new(dom.clone(), cod.clone(), table).expect("generated table"))
    }

    fn stoch(&mut self, dom: &ObjectList, cod: &ObjectList) -> Morphism {
        let cols = cod.carrier();
        let matrix = (0..dom.carrier())
            .map(|_| {
                let weights: Vec<i64> = (0..cols).map(|_| self.rng.gen_range(0..4)).collect();
                let total: i64 = weights.iter().sum();
                if total == 0 {
                    let mut row = vec![Rational::from_integer(BigInt::from(0)); cols];
                    row[0] = Rational::from_integer(BigInt::from(1));
                    row
                } else {
                    weights
                        .into_iter()
                        .map(|w| Rational::new(BigInt::from(w), BigInt::from(total)))
                        .collect()
                }
            })
            .collect();
        Morphism::FinStoch(
            crate::theory::FinStochMorphism::new(dom.clone(), cod.clone(), matrix)
                .expect("generated rows sum to 1"),
        )
    }

    fn mor(&mut self, kind: TheoryKind, dom: &ObjectList, cod: &ObjectList) -> Morphism {
        match kind {
            TheoryKind::FinStoch => self.stoch(dom, cod),
            _ => self.table(dom, cod),
        }
    }

    /// Random element tree of the given shape; leaves are tagged in reading
    /// order starting from `*tag`.
    fn elem(
        &mut self,
        kind: TheoryKind,
        shape: &Shape,
        outer: &(ObjectList, ObjectList),
        tag: &mut usize,
    ) -> Elem {
        match shape {
            Shape::Leaf => {
                let hole = self.pair();
                let f = self.mor(kind, &outer.0, &hole.0);
                let g = self.mor(kind, &hole.1, &outer.1);
                let t = *tag;
                *tag += 1;
                Elem::Mor { f, g, tag: t }
            }
            Shape::SeqUnit => Elem::SeqUnit(self.mor(kind, &outer.0, &outer.1)),
            Shape::ParUnit => {
                let unit = ObjectList::unit();
                Elem::ParUnit {
                    f: self.mor(kind, &outer.0, &unit),
                    g: self.mor(kind, &unit, &outer.1),
                }
            }
            Shape::Seq(l, r) => {
                let p1 = self.pair();
                let p2 = self.pair();
                let parts = Box::new([
                    self.mor(kind, &outer.0, &p1.0),
                    self.mor(kind, &p1.1, &p2.0),
                    self.mor(kind, &p2.1, &outer.1),
                ]);
                let left = Box::new(self.elem(kind, l, &p1, tag));
                let right = Box::new(self.elem(kind, r, &p2, tag));
                Elem::Seq { parts, left, right }
            }
            Shape::Par(l, r) => {
                let p1 = self.pair();
                let p2 = self.pair();
                let f = self.mor(kind, &outer.0, &p1.0.tensor(&p2.0));
                let g = self.mor(kind, &p1.1.tensor(&p2.1), &outer.1);
                let left = Box::new(self.elem(kind, l, &p1, tag));
                let right = Box::new(self.elem(kind, r, &p2, tag));
                Elem::Par { f, g, left, right }
            }
        }
    }

    fn fills_for(&mut self, kind: TheoryKind, e: &Elem) -> Vec<Morphism> {
        e.leaf_holes().iter().map(|(x, y)| self.mor(kind, x, y)).collect()
    }

    fn splice2(&mut self, outer: &(ObjectList, ObjectList)) -> NHoleSplice {
        let p1 = self.pair();
        let p2 = self.pair();
        NHoleSplice::two(
            self.table(&outer.0, &p1.0),
            self.table(&p1.1, &p2.0),
            self.table(&p2.1, &outer.1),
        )
        .expect("generated splice")
    }
}

#[derive(Clone, Debug)]
enum Shape {
    Leaf,
    SeqUnit,
    ParUnit,
    Seq(Box<Shape>, Box<Shape>),
    Par(Box<Shape>, Box<Shape>),
}

fn seq(l: Shape, r: Shape) -> Shape {
    Shape::Seq(Box::new(l), Box::new(r))
}

fn par(l: Shape, r: Shape) -> Shape {
    Shape::Par(Box::new(l), Box::new(r))
}

fn paths_agree(
    report: &mut FamilyReport,
    label: &str,
    source: &Elem,
    fills: &[Morphism],
    lhs: Result<Elem>,
    rhs: Result<Elem>,
) {
    let refs: Vec<&Morphism> = fills.iter().collect();
    let outcome = (|| -> Result<bool> {
        let l = lhs?.fill_all(&refs)?;
        let r = rhs?.fill_all(&refs)?;
        let src = source.fill_all(&refs)?;
        Ok(l.equal(&r)? && l.equal(&src)?)
    })();
    match outcome {
        Ok(ok) => report.check(ok, || format!("{label}: paths disagree")),
        Err(e) => {
            report.checks += 1;
            report.failures.push(format!("{label}: {e}"));
        }
    }
}

// ---------------------------------------------------------------------------
// Family: theory laws
// ---------------------------------------------------------------------------

/// Associativity, interchange, braiding involution and hexagon, stochastic
/// row preservation, and functoriality of free-term evaluation.
pub fn theory_laws(cfg: &LawConfig) -> FamilyReport {
    let mut report = FamilyReport::new("theory-laws");
    for &kind in &cfg.theories {
        let mut g = Gen::new(cfg.seed ^ 0x7411, cfg.max_carrier);
        for _ in 0..cfg.cases {
            report.cases += 1;
            let (a, b, c, d) = (g.obj(), g.obj(), g.obj(), g.obj());
            let f1 = g.mor(kind, &a, &b);
            let f2 = g.mor(kind, &b, &c);
            let f3 = g.mor(kind, &c, &d);
            report.run("compose associativity", (|| {
                let lhs = f1.compose(&f2)?.compose(&f3)?;
                let rhs = f1.compose(&f2.compose(&f3)?)?;
                assert_equal(&lhs, &rhs)
            })());

            let (a2, b2, c2) = (g.obj(), g.obj(), g.obj());
            let g1 = g.mor(kind, &a2, &b2);
            let g2 = g.mor(kind, &b2, &c2);
            report.run("interchange", (|| {
                let lhs = f1.tensor(&g1)?.compose(&f2.tensor(&g2)?)?;
                let rhs = f1.compose(&f2)?.tensor(&g1.compose(&g2)?)?;
                assert_equal(&lhs, &rhs)
            })());

            report.run("braiding involution", (|| {
                let s = Morphism::symmetry_in(kind, &a, &b)?;
                let back = Morphism::symmetry_in(kind, &b, &a)?;
                assert_equal(&s.compose(&back)?, &Morphism::identity_in(kind, &a.tensor(&b)))
            })());

            report.run("hexagon", (|| {
                let lhs = Morphism::symmetry_in(kind, &a, &b.tensor(&c))?;
                let step1 =
                    Morphism::symmetry_in(kind, &a, &b)?.tensor(&Morphism::identity_in(kind, &c))?;
                let step2 =
                    Morphism::identity_in(kind, &b).tensor(&Morphism::symmetry_in(kind, &a, &c)?)?;
                assert_equal(&lhs, &step1.compose(&step2)?)
            })());

            if kind == TheoryKind::FinStoch {
                report.run("rows sum to one", (|| {
                    let m = f1.compose(&f2)?.tensor(&g1)?;
                    let stoch = m.as_finstoch()?;
                    for (i, row) in stoch.matrix.iter().enumerate() {
                        let sum: Rational = row.iter().cloned().sum();
                        if sum != crate::rational::one() {
                            return Err(crate::error::Error::RowSum {
                                row: i,
                                sum: crate::rational::format_ratio(&sum),
                            });
                        }
                    }
                    Ok(())
                })());
            }
        }
    }

    // free-term evaluation is a strict monoidal functor
    let mut g = Gen::new(cfg.seed ^ 0x7412, cfg.max_carrier);
    for _ in 0..cfg.cases {
        report.cases += 1;
        let (a, b, c) = (g.obj(), g.obj(), g.obj());
        let fm = g.table(&a, &b);
        let gm = g.table(&b, &c);
        report.run("eval respects composition and tensor", (|| {
            use crate::theory::{eval_term, FreeTerm, Interpretation};
            let ft = FreeTerm::generator("f", a.clone(), b.clone());
            let gt = FreeTerm::generator("g", b.clone(), c.clone());
            let interp = Interpretation::new().with("f", fm.clone()).with("g", gm.clone());
            let comp = eval_term(&ft.clone().compose(gt.clone())?, &interp)?;
            assert_equal(&comp, &fm.compose(&gm)?)?;
            let tens = eval_term(&ft.tensor(gt), &interp)?;
            assert_equal(&tens, &fm.tensor(&gm)?)?;
            let sym = eval_term(&FreeTerm::Symmetry(a.clone(), b.clone()), &interp)?;
            assert_equal(&sym, &Morphism::symmetry_in(TheoryKind::FinFn, &a, &b)?)
        })());
    }
    report
}

fn assert_equal(lhs: &Morphism, rhs: &Morphism) -> Result<()> {
    if lhs.equal(rhs)? {
        Ok(())
    } else {
        Err(crate::error::Error::Presentation("morphisms differ".into()))
    }
}

// ---------------------------------------------------------------------------
// Family: splice coherence (pentagon and triangle)
// ---------------------------------------------------------------------------

/// Pentagon and triangle for the sequential coherence maps of spliced
/// arrows, compared extensionally after closing all holes.
pub fn splice_coherence(cfg: &LawConfig) -> FamilyReport {
    splice_coherence_at(cfg, cfg.max_carrier.max(3))
}

/// Same suite with an explicit carrier bound.
pub fn splice_coherence_at(cfg: &LawConfig, max_carrier: usize) -> FamilyReport {
    let mut report = FamilyReport::new("splice-coherence");
    let kind = TheoryKind::FinFn;
    let mut g = Gen::new(cfg.seed ^ 0x0059_711C, max_carrier);
    for case in 0..cfg.cases {
        report.cases += 1;
        // pentagon: from ((w ◁ x) ◁ y) ◁ z to w ◁ (x ◁ (y ◁ z)) both ways
        let outer = g.pair();
        let mut tag = 0;
        let shape = seq(seq(seq(Shape::Leaf, Shape::Leaf), Shape::Leaf), Shape::Leaf);
        let e = g.elem(kind, &shape, &outer, &mut tag);
        let fills = g.fills_for(kind, &e);
        let short = (|| {
            let s1 = tree::seq_assoc_r(&e)?;
            tree::seq_assoc_r(&s1)
        })();
        let long = (|| {
            let s1 = tree::map_left(&e, tree::seq_assoc_r)?;
            let s2 = tree::seq_assoc_r(&s1)?;
            tree::map_right(&s2, tree::seq_assoc_r)
        })();
        paths_agree(&mut report, &format!("pentagon #{case}"), &e, &fills, short, long);

        // triangle: (ρ ⋄ 1) = α ⨾ (λ ⋄ 1) on (x ◁ N) ◁ y
        let outer = g.pair();
        let mut tag = 0;
        let shape = seq(seq(Shape::Leaf, Shape::SeqUnit), Shape::Leaf);
        let e = g.elem(kind, &shape, &outer, &mut tag);
        let fills = g.fills_for(kind, &e);
        let rho_path = tree::map_left(&e, tree::seq_rho);
        let lambda_path = (|| {
            let s1 = tree::seq_assoc_r(&e)?;
            tree::map_right(&s1, tree::seq_lambda)
        })();
        paths_agree(&mut report, &format!("triangle #{case}"), &e, &fills, rho_path, lambda_path);

        // the associator agrees with its defining flattening on raw splices
        let anchor = g.pair();
        let outer_splice = {
            let p1 = g.pair();
            NHoleSplice::two(
                g.table(&outer.0, &p1.0),
                g.table(&p1.1, &anchor.0),
                g.table(&anchor.1, &outer.1),
            )
            .expect("generated splice")
        };
        let inner_splice = g.splice2(&anchor);
        report.run(&format!("alpha flattening #{case}"), (|| {
            let (o2, i2) = splice_alpha(&outer_splice, &inner_splice)?;
            let before = outer_splice.fill(2, &inner_splice)?;
            let after = o2.fill(1, &i2)?;
            if before.equal(&after)? {
                Ok(())
            } else {
                Err(crate::error::Error::Presentation("associator broke the flattening".into()))
            }
        })());

        // unitor formulas
        report.run(&format!("unitors #{case}"), (|| {
            let s = g.splice2(&outer);
            let (x1, y1) = s.holes()[0].clone();
            let u = g.table(&x1, &y1);
            let lam = splice_lambda(&s, &u)?;
            let expect = NHoleSplice::one(
                Morphism::compose_all(&[&s.morphisms()[0], &u, &s.morphisms()[1]])?,
                s.morphisms()[2].clone(),
            )?;
            if !lam.equal(&expect)? {
                return Err(crate::error::Error::Presentation("left unitor formula".into()));
            }
            let (x2, y2) = s.holes()[1].clone();
            let v = g.table(&x2, &y2);
            let rho = splice_rho(&s, &v)?;
            let expect = NHoleSplice::one(
                s.morphisms()[0].clone(),
                Morphism::compose_all(&[&s.morphisms()[1], &v, &s.morphisms()[2]])?,
            )?;
            if !rho.equal(&expect)? {
                return Err(crate::error::Error::Presentation("right unitor formula".into()));
            }
            Ok(())
        })());
    }
    report
}

// ---------------------------------------------------------------------------
// Family: produoidal coherence (the laxator diagrams)
// ---------------------------------------------------------------------------

type Psi2Fn = fn(&Elem) -> Result<Elem>;

/// All twelve coherence diagrams for the laxators of spliced monoidal
/// arrows, checked extensionally on random elements.
pub fn produoidal_coherence(cfg: &LawConfig) -> FamilyReport {
    produoidal_coherence_with(cfg, tree::psi2, "produoidal-coherence")
}

/// The same diagrams driven by a deliberately wrong first laxator; a
/// mutation control showing the suite can fail.
pub fn produoidal_coherence_mutated(cfg: &LawConfig) -> FamilyReport {
    produoidal_coherence_with(cfg, psi2_flipped, "produoidal-coherence-mutated")
}

/// Wrong on purpose: swaps the two inner splits before applying ψ₂.
fn psi2_flipped(e: &Elem) -> Result<Elem> {
    match e {
        Elem::Par { f, g, left, right } => tree::psi2(&Elem::Par {
            f: f.clone(),
            g: g.clone(),
            left: right.clone(),
            right: left.clone(),
        }),
        other => tree::psi2(other),
    }
}

fn produoidal_coherence_with(cfg: &LawConfig, psi2: Psi2Fn, name: &str) -> FamilyReport {
    let mut report = FamilyReport::new(name);
    let kind = TheoryKind::FinFn;
    let mut g = Gen::new(cfg.seed ^ 0xD0D0, cfg.max_carrier);
    for case in 0..cfg.cases {
        report.cases += 1;

        // (1) tensor associativity against ψ₂
        let outer = g.pair();
        let mut tag = 0;
        let shape = par(
            par(seq(Shape::Leaf, Shape::Leaf), seq(Shape::Leaf, Shape::Leaf)),
            seq(Shape::Leaf, Shape::Leaf),
        );
        let e = g.elem(kind, &shape, &outer, &mut tag);
        let fills = g.fills_for(kind, &e);
        let left_path = (|| {
            let s1 = tree::map_left(&e, psi2)?;
            let s2 = psi2(&s1)?;
            tree::map_both(&s2, tree::par_assoc_r)
        })();
        let right_path = (|| {
            let s1 = tree::par_assoc_r(&e)?;
            let s2 = tree::map_right(&s1, psi2)?;
            psi2(&s2)
        })();
        paths_agree(&mut report, &format!("psi2-tensor-assoc #{case}"), &e, &fills, left_path, right_path);

        // (2) sequential associativity against ψ₂
        let outer = g.pair();
        let mut tag = 0;
        let shape = par(
            seq(seq(Shape::Leaf, Shape::Leaf), Shape::Leaf),
            seq(seq(Shape::Leaf, Shape::Leaf), Shape::Leaf),
        );
        let e = g.elem(kind, &shape, &outer, &mut tag);
        let fills = g.fills_for(kind, &e);
        let left_path = (|| {
            let s1 = psi2(&e)?;
            let s2 = tree::map_left(&s1, psi2)?;
            tree::seq_assoc_r(&s2)
        })();
        let right_path = (|| {
            let s1 = tree::map_both(&e, tree::seq_assoc_r)?;
            let s2 = psi2(&s1)?;
            tree::map_right(&s2, psi2)
        })();
        paths_agree(&mut report, &format!("psi2-seq-assoc #{case}"), &e, &fills, left_path, right_path);

        // (3, 4) tensor unitality against ψ₀ and ψ₂
        let outer = g.pair();
        let mut tag = 0;
        let e = g.elem(kind, &par(Shape::ParUnit, seq(Shape::Leaf, Shape::Leaf)), &outer, &mut tag);
        let fills = g.fills_for(kind, &e);
        let direct = tree::par_lambda(&e);
        let around = (|| {
            let s1 = tree::map_left(&e, tree::psi0)?;
            let s2 = psi2(&s1)?;
            tree::map_both(&s2, tree::par_lambda)
        })();
        paths_agree(&mut report, &format!("psi0-lambda #{case}"), &e, &fills, direct, around);

        let outer = g.pair();
        let mut tag = 0;
        let e = g.elem(kind, &par(seq(Shape::Leaf, Shape::Leaf), Shape::ParUnit), &outer, &mut tag);
        let fills = g.fills_for(kind, &e);
        let direct = tree::par_rho(&e);
        let around = (|| {
            let s1 = tree::map_right(&e, tree::psi0)?;
            let s2 = psi2(&s1)?;
            tree::map_both(&s2, tree::par_rho)
        })();
        paths_agree(&mut report, &format!("psi0-rho #{case}"), &e, &fills, direct, around);

        // (5, 6) sequential unitality against φ₂
        let outer = g.pair();
        let mut tag = 0;
        let e = g.elem(
            kind,
            &par(seq(Shape::SeqUnit, Shape::Leaf), seq(Shape::SeqUnit, Shape::Leaf)),
            &outer,
            &mut tag,
        );
        let fills = g.fills_for(kind, &e);
        let direct = (|| {
            let s1 = tree::map_both(&e, tree::seq_lambda)?;
            Ok(s1)
        })();
        let around = (|| {
            let s1 = psi2(&e)?;
            let s2 = tree::map_left(&s1, tree::phi2)?;
            tree::seq_lambda(&s2)
        })();
        paths_agree(&mut report, &format!("phi2-kappa #{case}"), &e, &fills, direct, around);

        let outer = g.pair();
        let mut tag = 0;
        let e = g.elem(
            kind,
            &par(seq(Shape::Leaf, Shape::SeqUnit), seq(Shape::Leaf, Shape::SeqUnit)),
            &outer,
            &mut tag,
        );
        let fills = g.fills_for(kind, &e);
        let direct = tree::map_both(&e, tree::seq_rho);
        let around = (|| {
            let s1 = psi2(&e)?;
            let s2 = tree::map_right(&s1, tree::phi2)?;
            tree::seq_rho(&s2)
        })();
        paths_agree(&mut report, &format!("phi2-nu #{case}"), &e, &fills, direct, around);

        // (7) associativity of φ₂
        let outer = g.pair();
        let mut tag = 0;
        let e = g.elem(kind, &par(par(Shape::SeqUnit, Shape::SeqUnit), Shape::SeqUnit), &outer, &mut tag);
        let left_path = (|| {
            let s1 = tree::map_left(&e, tree::phi2)?;
            tree::phi2(&s1)
        })();
        let right_path = (|| {
            let s1 = tree::par_assoc_r(&e)?;
            let s2 = tree::map_right(&s1, tree::phi2)?;
            tree::phi2(&s2)
        })();
        paths_agree(&mut report, &format!("phi2-assoc #{case}"), &e, &[], left_path, right_path);

        // (8) coassociativity of ψ₀
        let outer = g.pair();
        let mut tag = 0;
        let e = g.elem(kind, &Shape::ParUnit, &outer, &mut tag);
        let left_path = (|| {
            let s1 = tree::psi0(&e)?;
            let s2 = tree::map_left(&s1, tree::psi0)?;
            tree::seq_assoc_r(&s2)
        })();
        let right_path = (|| {
            let s1 = tree::psi0(&e)?;
            tree::map_right(&s1, tree::psi0)
        })();
        paths_agree(&mut report, &format!("psi0-coassoc #{case}"), &e, &[], left_path, right_path);

        // (9, 10) unitality of φ₀ against φ₂
        let outer = g.pair();
        let mut tag = 0;
        let e = g.elem(kind, &par(Shape::SeqUnit, Shape::ParUnit), &outer, &mut tag);
        let direct = tree::par_rho(&e);
        let around = (|| {
            let s1 = tree::map_right(&e, tree::phi0)?;
            tree::phi2(&s1)
        })();
        paths_agree(&mut report, &format!("phi0-rho #{case}"), &e, &[], direct, around);

        let outer = g.pair();
        let mut tag = 0;
        let e = g.elem(kind, &par(Shape::ParUnit, Shape::SeqUnit), &outer, &mut tag);
        let direct = tree::par_lambda(&e);
        let around = (|| {
            let s1 = tree::map_left(&e, tree::phi0)?;
            tree::phi2(&s1)
        })();
        paths_agree(&mut report, &format!("phi0-lambda #{case}"), &e, &[], direct, around);

        // (11, 12) counitality of φ₀ against ψ₀
        let outer = g.pair();
        let mut tag = 0;
        let e = g.elem(kind, &Shape::ParUnit, &outer, &mut tag);
        let around_nu = (|| {
            let s1 = tree::psi0(&e)?;
            let s2 = tree::map_right(&s1, tree::phi0)?;
            tree::seq_rho(&s2)
        })();
        paths_agree(&mut report, &format!("phi0-counit-nu #{case}"), &e, &[], around_nu, Ok(e.clone()));
        let around_kappa = (|| {
            let s1 = tree::psi0(&e)?;
            let s2 = tree::map_left(&s1, tree::phi0)?;
            tree::seq_lambda(&s2)
        })();
        paths_agree(&mut report, &format!("phi0-counit-kappa #{case}"), &e, &[], around_kappa, Ok(e.clone()));
    }
    report
}

// ---------------------------------------------------------------------------
// Family: the seventeen context operations
// ---------------------------------------------------------------------------

/// Every formula of the context action algebra, fully filled with all
/// enumerated hole morphisms and compared against assembling the inputs by
/// hand.
pub fn context_operations(cfg: &LawConfig) -> FamilyReport {
    let mut report = FamilyReport::new("context-operations");
    let mut g = Gen::new(cfg.seed ^ 0xAE, cfg.max_carrier.min(2));
    let kind = TheoryKind::FinFn;
    let cases = cfg.cases.div_ceil(10);
    for case in 0..cases {
        report.cases += 1;
        if let Err(e) = context_ops_case(&mut report, &mut g, kind) {
            report.failures.push(format!("context ops case #{case}: {e}"));
        }
    }
    report
}

fn rand_single(
    g: &mut Gen,
    kind: TheoryKind,
    outer: &(ObjectList, ObjectList),
    hole: &HoleType,
) -> Result<Context> {
    let m = g.obj();
    let n = g.obj();
    let mid_in = ObjectList::tensor_all(&[&m, &hole.0, &n]);
    let mid_out = ObjectList::tensor_all(&[&m, &hole.1, &n]);
    Context::single(
        g.mor(kind, &outer.0, &mid_in),
        m,
        hole.clone(),
        n,
        g.mor(kind, &mid_out, &outer.1),
    )
}

fn rand_seq_split(
    g: &mut Gen,
    kind: TheoryKind,
    outer: &(ObjectList, ObjectList),
    holes: &(HoleType, HoleType),
) -> Result<Context> {
    let (m, n, k, l) = (g.obj(), g.obj(), g.obj(), g.obj());
    let up1 = ObjectList::tensor_all(&[&m, &holes.0 .0, &n]);
    let low1 = ObjectList::tensor_all(&[&m, &holes.0 .1, &n]);
    let up2 = ObjectList::tensor_all(&[&k, &holes.1 .0, &l]);
    let low2 = ObjectList::tensor_all(&[&k, &holes.1 .1, &l]);
    Context::seq_split(
        g.mor(kind, &outer.0, &up1),
        m,
        holes.0.clone(),
        n,
        g.mor(kind, &low1, &up2),
        k,
        holes.1.clone(),
        l,
        g.mor(kind, &low2, &outer.1),
    )
}

fn rand_par_split(
    g: &mut Gen,
    kind: TheoryKind,
    outer: &(ObjectList, ObjectList),
    holes: &(HoleType, HoleType),
) -> Result<Context> {
    let (m, n, o) = (g.obj(), g.obj(), g.obj());
    let up = ObjectList::tensor_all(&[&m, &holes.0 .0, &n, &holes.1 .0, &o]);
    let low = ObjectList::tensor_all(&[&m, &holes.0 .1, &n, &holes.1 .1, &o]);
    Context::par_split(
        g.mor(kind, &outer.0, &up),
        m,
        holes.0.clone(),
        n,
        holes.1.clone(),
        o,
        g.mor(kind, &low, &outer.1),
    )
}

/// Iterates over all assignments drawn from the enumerated hom sets of the
/// holes, calling `body` with each.
fn for_all_fills(holes: &[HoleType], mut body: impl FnMut(&[&Morphism]) -> Result<()>) -> Result<()> {
    let sets: Vec<Vec<Morphism>> = holes
        .iter()
        .map(|(x, y)| {
            Ok(enumerate_finfn_hom(x, y, 1 << 12)?.into_iter().map(Morphism::FinFn).collect())
        })
        .collect::<Result<_>>()?;
    let mut index = vec![0usize; sets.len()];
    loop {
        let fills: Vec<&Morphism> = index.iter().zip(&sets).map(|(&i, s)| &s[i]).collect();
        body(&fills)?;
        let mut k = sets.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            index[k] += 1;
            if index[k] < sets[k].len() {
                break;
            }
            index[k] = 0;
        }
    }
}

fn expect_equal(label: &str, lhs: &Morphism, rhs: &Morphism) -> Result<()> {
    if lhs.equal(rhs)? {
        Ok(())
    } else {
        Err(crate::error::Error::Presentation(format!("{label}: filled composites differ")))
    }
}

fn context_ops_case(report: &mut FamilyReport, g: &mut Gen, kind: TheoryKind) -> Result<()> {
    let outer = g.pair();
    let h1: HoleType = g.pair();
    let h2: HoleType = g.pair();
    let h3: HoleType = g.pair();
    let h4: HoleType = g.pair();

    // unit action, assembled by hand
    {
        let c = rand_single(g, kind, &outer, &h1)?;
        for_all_fills(std::slice::from_ref(&h1), |fills| {
            let via = context::unit_action(&c, fills[0])?;
            let manual = {
                let parts = c.morphisms();
                let row = &c.rows()[0];
                let layer = parts[0]
                    .identity_like(&row.residuals[0])
                    .tensor(fills[0])?
                    .tensor(&parts[0].identity_like(&row.residuals[1]))?;
                Morphism::compose_all(&[&parts[0], &layer, &parts[1]])?
            };
            expect_equal("unit_action", &via, &manual)
        })?;
        report.checks += 1;
    }

    // sequential actions
    {
        let s = rand_seq_split(g, kind, &outer, &(h1.clone(), h2.clone()))?;
        let c = rand_single(g, kind, &h1, &h3)?;
        let nested = context::seq_action_1(&s, &c)?;
        for_all_fills(&[h3.clone(), h2.clone()], |fills| {
            let via = nested.fill_all(fills)?;
            let manual = s.fill_all(&[&context::fill(&c, fills[0])?, fills[1]])?;
            expect_equal("seq_action_1", &via, &manual)
        })?;
        let c2 = rand_single(g, kind, &h2, &h3)?;
        let nested = context::seq_action_2(&s, &c2)?;
        for_all_fills(&[h1.clone(), h3.clone()], |fills| {
            let via = nested.fill_all(fills)?;
            let manual = s.fill_all(&[fills[0], &context::fill(&c2, fills[1])?])?;
            expect_equal("seq_action_2", &via, &manual)
        })?;
        let c3 = rand_single(g, kind, &outer, &h4)?;
        let s2 = rand_seq_split(g, kind, &h4, &(h1.clone(), h2.clone()))?;
        let nested = context::seq_action_both(&c3, &s2)?;
        for_all_fills(&[h1.clone(), h2.clone()], |fills| {
            let via = nested.fill_all(fills)?;
            let manual = context::fill(&c3, &s2.fill_all(fills)?)?;
            expect_equal("seq_action_both", &via, &manual)
        })?;
        report.checks += 3;
    }

    // sequential associators and unitors
    {
        let s = rand_seq_split(g, kind, &outer, &(h1.clone(), h2.clone()))?;
        let t = rand_seq_split(g, kind, &h1, &(h3.clone(), h4.clone()))?;
        let nested = context::seq_assoc_left(&s, &t)?;
        for_all_fills(&[h3.clone(), h4.clone(), h2.clone()], |fills| {
            let via = nested.fill_all(fills)?;
            let manual = s.fill_all(&[&t.fill_all(&fills[..2])?, fills[2]])?;
            expect_equal("seq_assoc_left", &via, &manual)
        })?;
        let t2 = rand_seq_split(g, kind, &h2, &(h3.clone(), h4.clone()))?;
        let nested = context::seq_assoc_right(&s, &t2)?;
        for_all_fills(&[h1.clone(), h3.clone(), h4.clone()], |fills| {
            let via = nested.fill_all(fills)?;
            let manual = s.fill_all(&[fills[0], &t2.fill_all(&fills[1..])?])?;
            expect_equal("seq_assoc_right", &via, &manual)
        })?;
        let u = g.mor(kind, &h1.0, &h1.1);
        let dropped = context::seq_unitor_left(&s, &u)?;
        for_all_fills(std::slice::from_ref(&h2), |fills| {
            let via = context::fill(&dropped, fills[0])?;
            let manual = s.fill_all(&[&u, fills[0]])?;
            expect_equal("seq_unitor_left", &via, &manual)
        })?;
        let v = g.mor(kind, &h2.0, &h2.1);
        let dropped = context::seq_unitor_right(&s, &v)?;
        for_all_fills(std::slice::from_ref(&h1), |fills| {
            let via = context::fill(&dropped, fills[0])?;
            let manual = s.fill_all(&[fills[0], &v])?;
            expect_equal("seq_unitor_right", &via, &manual)
        })?;
        report.checks += 4;
    }

    // parallel actions
    {
        let p = rand_par_split(g, kind, &outer, &(h1.clone(), h2.clone()))?;
        let c = rand_single(g, kind, &h1, &h3)?;
        let nested = context::par_action_1(&p, &c)?;
        for_all_fills(&[h3.clone(), h2.clone()], |fills| {
            let via = nested.fill_all(fills)?;
            let manual = p.fill_all(&[&context::fill(&c, fills[0])?, fills[1]])?;
            expect_equal("par_action_1", &via, &manual)
        })?;
        let c2 = rand_single(g, kind, &h2, &h3)?;
        let nested = context::par_action_2(&p, &c2)?;
        for_all_fills(&[h1.clone(), h3.clone()], |fills| {
            let via = nested.fill_all(fills)?;
            let manual = p.fill_all(&[fills[0], &context::fill(&c2, fills[1])?])?;
            expect_equal("par_action_2", &via, &manual)
        })?;
        let c3 = rand_single(g, kind, &outer, &h4)?;
        let p2 = rand_par_split(g, kind, &h4, &(h1.clone(), h2.clone()))?;
        let nested = context::par_action_both(&c3, &p2)?;
        for_all_fills(&[h1.clone(), h2.clone()], |fills| {
            let via = nested.fill_all(fills)?;
            let manual = context::fill(&c3, &p2.fill_all(fills)?)?;
            expect_equal("par_action_both", &via, &manual)
        })?;
        report.checks += 3;
    }

    // parallel associators and unitors
    {
        let p = rand_par_split(g, kind, &outer, &(h1.clone(), h2.clone()))?;
        let q = rand_par_split(g, kind, &h1, &(h3.clone(), h4.clone()))?;
        let nested = context::par_assoc_left(&p, &q)?;
        for_all_fills(&[h3.clone(), h4.clone(), h2.clone()], |fills| {
            let via = nested.fill_all(fills)?;
            let manual = p.fill_all(&[&q.fill_all(&fills[..2])?, fills[2]])?;
            expect_equal("par_assoc_left", &via, &manual)
        })?;
        let q2 = rand_par_split(g, kind, &h2, &(h3.clone(), h4.clone()))?;
        let nested = context::par_assoc_right(&p, &q2)?;
        for_all_fills(&[h1.clone(), h3.clone(), h4.clone()], |fills| {
            let via = nested.fill_all(fills)?;
            let manual = p.fill_all(&[fills[0], &q2.fill_all(&fills[1..])?])?;
            expect_equal("par_assoc_right", &via, &manual)
        })?;
        let u = g.mor(kind, &h1.0, &h1.1);
        let primary = context::par_unitor_left(&p, &u)?;
        let slid = context::par_unitor_left_slid(&p, &u)?;
        for_all_fills(std::slice::from_ref(&h2), |fills| {
            let a = context::fill(&primary, fills[0])?;
            let b = context::fill(&slid, fills[0])?;
            let manual = p.fill_all(&[&u, fills[0]])?;
            expect_equal("par_unitor_left (primary)", &a, &manual)?;
            expect_equal("par_unitor_left (slid)", &b, &manual)
        })?;
        let v = g.mor(kind, &h2.0, &h2.1);
        let primary = context::par_unitor_right(&p, &v)?;
        let slid = context::par_unitor_right_slid(&p, &v)?;
        for_all_fills(std::slice::from_ref(&h1), |fills| {
            let a = context::fill(&primary, fills[0])?;
            let b = context::fill(&slid, fills[0])?;
            let manual = p.fill_all(&[fills[0], &v])?;
            expect_equal("par_unitor_right (primary)", &a, &manual)?;
            expect_equal("par_unitor_right (slid)", &b, &manual)
        })?;
        report.checks += 4;
    }

    // laxators
    {
        let hj: HoleType = g.pair();
        let hk: HoleType = g.pair();
        let p = rand_par_split(g, kind, &outer, &(h1.clone(), h2.clone()))?;
        let j = rand_seq_split(g, kind, &h1, &(h3.clone(), hj.clone()))?;
        let k = rand_seq_split(g, kind, &h2, &(h4.clone(), hk.clone()))?;
        let woven = context::laxator_left(&p, &j, &k)?;
        for_all_fills(&[h3.clone(), h4.clone(), hj.clone(), hk.clone()], |fills| {
            let via = woven.fill_all(fills)?;
            let manual = p.fill_all(&[
                &j.fill_all(&[fills[0], fills[2]])?,
                &k.fill_all(&[fills[1], fills[3]])?,
            ])?;
            expect_equal("laxator_left", &via, &manual)
        })?;

        let s = rand_seq_split(g, kind, &outer, &(h1.clone(), h2.clone()))?;
        let jp = rand_par_split(g, kind, &h1, &(h3.clone(), hj.clone()))?;
        let kp = rand_par_split(g, kind, &h2, &(h4.clone(), hk.clone()))?;
        let woven = context::laxator_right(&s, &jp, &kp)?;
        for_all_fills(&[h3.clone(), hj.clone(), h4.clone(), hk.clone()], |fills| {
            let via = woven.fill_all(fills)?;
            let manual = s.fill_all(&[
                &jp.fill_all(&[fills[0], fills[1]])?,
                &kp.fill_all(&[fills[2], fills[3]])?,
            ])?;
            expect_equal("laxator_right", &via, &manual)
        })?;
        report.checks += 2;
    }

    // identity and composition round out the algebra
    {
        let c = rand_single(g, kind, &outer, &h1)?;
        let idc = context::ctx_identity(kind, &outer.0, &outer.1);
        let left = context::ctx_compose(&idc, &c)?;
        report.check(left.rep_equal(&c)?, || "identity is not a left unit".into());
        let inner = rand_single(g, kind, &h1, &h2)?;
        let nested = context::ctx_compose(&c, &inner)?;
        for_all_fills(std::slice::from_ref(&h2), |fills| {
            let via = context::fill(&nested, fills[0])?;
            let manual = context::fill(&c, &context::fill(&inner, fills[0])?)?;
            expect_equal("ctx_compose", &via, &manual)
        })?;
        let inner2 = rand_single(g, kind, &h2, &h3)?;
        let lhs = context::ctx_compose(&context::ctx_compose(&c, &inner)?, &inner2)?;
        let rhs = context::ctx_compose(&c, &context::ctx_compose(&inner, &inner2)?)?;
        report.check(lhs.rep_equal(&rhs)?, || "nesting is not associative on representatives".into());
        report.check(context::fill_equal(&lhs, &rhs)?, || "nesting is not associative".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Family: normalization
// ---------------------------------------------------------------------------

/// Fill preservation and idempotence for both normalizations.
pub fn normalization(cfg: &LawConfig) -> FamilyReport {
    let mut report = FamilyReport::new("normalization");
    for &kind in &cfg.theories {
        let mut g = Gen::new(cfg.seed ^ 0x40B1, cfg.max_carrier);
        for case in 0..cfg.cases {
            report.cases += 1;
            let r = (|| -> Result<()> {
                let outer = g.pair();
                let hole = g.pair();
                // spliced arrow
                let s = NHoleSplice::one(
                    g.mor(kind, &outer.0, &hole.0),
                    g.mor(kind, &hole.1, &outer.1),
                )?;
                let ctx = context::normalize_from_duosplice(&SplicedElem::Seq(s.clone()))?;
                let lns = lens::sym_normalize(&SplicedElem::Seq(s.clone()))?;
                // every enumerable fill over finite functions (random ones
                // when the hom set outgrows the budget or is stochastic)
                let fills: Vec<Morphism> = match kind {
                    TheoryKind::FinFn => match enumerate_finfn_hom(&hole.0, &hole.1, 1 << 12) {
                        Ok(all) => all.into_iter().map(Morphism::FinFn).collect(),
                        Err(_) => (0..4).map(|_| g.mor(kind, &hole.0, &hole.1)).collect(),
                    },
                    _ => vec![g.mor(kind, &hole.0, &hole.1)],
                };
                for h in &fills {
                    expect_equal(
                        "context normalization preserves fills",
                        &context::fill(&ctx, h)?,
                        &s.fill_all(&[h])?,
                    )?;
                    expect_equal(
                        "lens normalization preserves fills",
                        &lns.fill_all(&[h])?,
                        &s.fill_all(&[h])?,
                    )?;
                }
                // idempotence: the image re-normalizes to itself
                let again = context::normalize_from_duosplice(&SplicedElem::Seq(
                    ctx.as_splice().expect("normalized context has unit residuals"),
                ))?;
                if !again.rep_equal(&ctx)? {
                    return Err(crate::error::Error::Presentation(
                        "context normalization not idempotent".into(),
                    ));
                }
                let again = lens::sym_normalize(&SplicedElem::Seq(
                    lns.as_splice().expect("normalized lens has unit residuals"),
                ))?;
                if !again.rep_equal(&lns)? {
                    return Err(crate::error::Error::Presentation(
                        "lens normalization not idempotent".into(),
                    ));
                }

                // parallel split
                let (hx, hy) = (g.pair(), g.pair());
                let p = ParSplit::new(
                    g.mor(kind, &outer.0, &hx.0.tensor(&hy.0)),
                    g.mor(kind, &hx.1.tensor(&hy.1), &outer.1),
                    hx.clone(),
                    hy.clone(),
                )?;
                let (u, v) = (g.mor(kind, &hx.0, &hx.1), g.mor(kind, &hy.0, &hy.1));
                let direct = p.fill(&u, &v)?;
                let ctx = context::normalize_from_duosplice(&SplicedElem::Par(p.clone()))?;
                expect_equal("parallel context fill", &ctx.fill_all(&[&u, &v])?, &direct)?;
                let lns = lens::sym_normalize(&SplicedElem::Par(p.clone()))?;
                expect_equal("parallel lens fill", &lns.fill_all(&[&u.tensor(&v)?])?, &direct)?;

                // parallel unit
                let pu = ParUnit::new(
                    g.mor(kind, &outer.0, &ObjectList::unit()),
                    g.mor(kind, &ObjectList::unit(), &outer.1),
                )?;
                let fused = duosplice::phi0(&pu)?;
                let ctx = context::normalize_from_duosplice(&SplicedElem::ParUnit(pu.clone()))?;
                expect_equal("parallel unit context", &ctx.morphisms()[0], &fused)?;
                let lns = lens::sym_normalize(&SplicedElem::ParUnit(pu))?;
                expect_equal("parallel unit lens", &lns.morphisms()[0], &fused)?;
                Ok(())
            })();
            report.run(&format!("normalization case #{case} ({})", kind.name()), r);
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Family: dinaturality
// ---------------------------------------------------------------------------

/// Slides are observationally invisible, and the handshake refactoring is
/// accepted while its perturbed control is rejected.
pub fn dinaturality(cfg: &LawConfig) -> FamilyReport {
    let mut report = FamilyReport::new("dinaturality");
    let kind = TheoryKind::FinFn;
    let mut g = Gen::new(cfg.seed ^ 0xD1A7, cfg.max_carrier);
    for case in 0..cfg.cases {
        report.cases += 1;
        let r = (|| -> Result<()> {
            let outer = g.pair();
            let hole = g.pair();
            let (m_new, n_new) = (g.obj(), g.obj());
            let (m_obj, n_obj) = (g.obj(), g.obj());
            let core = g.table(&outer.0, &ObjectList::tensor_all(&[&m_new, &hole.0, &n_new]));
            let m = g.table(&m_new, &m_obj);
            let n = g.table(&n_new, &n_obj);
            let wedge = m.tensor(&Morphism::identity_in(kind, &hole.0))?.tensor(&n)?;
            let f = core.compose(&wedge)?;
            let gm = g.table(&ObjectList::tensor_all(&[&m_obj, &hole.1, &n_obj]), &outer.1);
            let c = Context::single(f, m_obj.clone(), hole.clone(), n_obj.clone(), gm)?;
            let slid = context::dinat_slide(
                &c,
                &SlideFactorization { core, m, n },
                SlideDirection::SourceToTarget,
            )?;
            if !context::fill_equal(&c, &slid)? {
                return Err(crate::error::Error::Presentation("slide not fill-equal".into()));
            }
            // the observational cross-check only fits small holes
            let hom_size = (hole.1.carrier() as f64).powi(hole.0.carrier() as i32);
            if hom_size <= 4096.0 && !context::probe_fill_equal(&c, &slid)? {
                return Err(crate::error::Error::Presentation("slide not probe-equal".into()));
            }
            // the identity slide is the identity rewrite
            let back = context::dinat_slide(
                &slid,
                &SlideFactorization {
                    core: slid.morphisms()[1].clone(),
                    m: Morphism::identity_in(kind, &slid.rows()[0].residuals[0]),
                    n: Morphism::identity_in(kind, &slid.rows()[0].residuals[1]),
                },
                SlideDirection::TargetToSource,
            )?;
            if !back.rep_equal(&slid)? {
                return Err(crate::error::Error::Presentation("identity slide rewrote the context".into()));
            }
            Ok(())
        })();
        report.run(&format!("dinat slide #{case}"), r);
    }

    // the handshake refactoring, in every selected theory
    for &kind in &cfg.theories {
        report.cases += 1;
        report.run(&format!("handshake refactoring ({})", kind.name()), (|| {
            let verdict = crate::session::dinaturality_refactor_check(
                &handshake::client_keeping_junk(kind),
                &handshake::client_projecting_early(kind),
            )?;
            if !verdict.equivalent {
                return Err(crate::error::Error::Presentation("refactoring rejected".into()));
            }
            let control = crate::session::dinaturality_refactor_check(
                &handshake::client_keeping_junk_perturbed(kind),
                &handshake::client_projecting_early(kind),
            )?;
            if control.equivalent {
                return Err(crate::error::Error::Presentation("perturbed control accepted".into()));
            }
            Ok(())
        })());
    }
    report
}

// ---------------------------------------------------------------------------
// Family: cartesian lens quotient
// ---------------------------------------------------------------------------

/// Exhaustive at carrier two: representatives with unit and two-point
/// residuals partition into exactly `4 · 16 = 64` classes, the get/put
/// roundtrip stays in class, and in-class pairs are observationally equal.
pub fn cartesian_lens_quotient() -> FamilyReport {
    let mut report = FamilyReport::new("cartesian-lens-quotient");
    let r = (|| -> Result<()> {
        let b = ObjectList::of(&[("B", 2)]);
        let hole = (b.clone(), b.clone());
        let mut reps: Vec<Lens> = Vec::new();
        for f in enumerate_finfn_hom(&b, &b, 1 << 12)? {
            for gm in enumerate_finfn_hom(&b, &b, 1 << 12)? {
                reps.push(Lens::single(
                    Morphism::FinFn(f.clone()),
                    ObjectList::unit(),
                    hole.clone(),
                    Morphism::FinFn(gm),
                )?);
            }
        }
        let m = ObjectList::of(&[("M", 2)]);
        let mx = m.tensor(&b);
        for f in enumerate_finfn_hom(&b, &mx, 1 << 12)? {
            for gm in enumerate_finfn_hom(&mx, &b, 1 << 12)? {
                reps.push(Lens::single(
                    Morphism::FinFn(f.clone()),
                    m.clone(),
                    hole.clone(),
                    Morphism::FinFn(gm),
                )?);
            }
        }
        if reps.len() != 16 + 256 {
            return Err(crate::error::Error::Presentation(format!(
                "expected 272 representatives, got {}",
                reps.len()
            )));
        }

        let mut classes: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, l) in reps.iter().enumerate() {
            let gp = lens::to_getput(l)?;
            let key = format!("{:?}|{:?}", gp.get.as_finfn()?.table, gp.put.as_finfn()?.table);
            classes.entry(key).or_default().push(i);
        }
        if classes.len() != 64 {
            return Err(crate::error::Error::Presentation(format!(
                "fill_equal induced {} classes, expected 64",
                classes.len()
            )));
        }
        for members in classes.values() {
            let rep = &reps[members[0]];
            let gp = lens::to_getput(rep)?;
            let back = lens::from_getput(&gp)?;
            if !lens::lens_equal(rep, &back)? {
                return Err(crate::error::Error::Presentation("roundtrip left its class".into()));
            }
            let gp_back = lens::to_getput(&back)?;
            if !gp.equal(&gp_back)? {
                return Err(crate::error::Error::Presentation("to_getput is not a retraction".into()));
            }
            // canonical equality is observationally sound
            for pair in members.windows(2) {
                if !lens::probe_fill_equal(&reps[pair[0]], &reps[pair[1]])? {
                    return Err(crate::error::Error::Presentation("class members observably differ".into()));
                }
            }
        }
        Ok(())
    })();
    report.cases = 272;
    report.run("cartesian quotient", r);
    report
}

// ---------------------------------------------------------------------------
// Family: send/get functoriality
// ---------------------------------------------------------------------------

pub fn send_get_functors(cfg: &LawConfig) -> FamilyReport {
    let mut report = FamilyReport::new("send-get-functors");
    let kind = TheoryKind::FinFn;
    let mut g = Gen::new(cfg.seed ^ 0x5E9D, cfg.max_carrier);
    for case in 0..cfg.cases {
        report.cases += 1;
        let r = (|| -> Result<()> {
            let (a, b, c) = (g.obj(), g.obj(), g.obj());
            let f = g.table(&a, &b);
            let h = g.table(&b, &c);
            let lhs = lens::send(&f.compose(&h)?);
            let rhs = lens::lens_compose(&lens::send(&f), &lens::send(&h))?;
            if !lens::lens_equal(&lhs, &rhs)? {
                return Err(crate::error::Error::Presentation("send broke composition".into()));
            }
            let ids = lens::send(&Morphism::identity_in(kind, &a));
            if !lens::lens_equal(&ids, &lens::Lens::identity(kind, &a, &ObjectList::unit()))? {
                return Err(crate::error::Error::Presentation("send broke identities".into()));
            }
            let lhs = lens::get(&f.compose(&h)?);
            let rhs = lens::lens_compose(&lens::get(&h), &lens::get(&f))?;
            if !lens::lens_equal(&lhs, &rhs)? {
                return Err(crate::error::Error::Presentation("get broke composition".into()));
            }
            let (a2, b2) = (g.obj(), g.obj());
            let f2 = g.table(&a2, &b2);
            let lhs = lens::send(&f.tensor(&f2)?);
            let rhs = lens::lens_tensor(&lens::send(&f), &lens::send(&f2))?;
            if !lens::lens_equal(&lhs, &rhs)? {
                return Err(crate::error::Error::Presentation("send broke tensors".into()));
            }
            let lhs = lens::get(&f.tensor(&f2)?);
            let rhs = lens::lens_tensor(&lens::get(&f), &lens::get(&f2))?;
            if !lens::lens_equal(&lhs, &rhs)? {
                return Err(crate::error::Error::Presentation("get broke tensors".into()));
            }
            Ok(())
        })();
        report.run(&format!("send/get #{case}"), r);
    }
    report
}

// ---------------------------------------------------------------------------
// Family: counit soundness
// ---------------------------------------------------------------------------

/// Builds coherence instances by running the splice operations on random
/// data, contours them, and checks every emitted relation in the theory.
pub fn counit_soundness(cfg: &LawConfig) -> FamilyReport {
    let mut report = FamilyReport::new("counit");
    let mut g = Gen::new(cfg.seed ^ 0xC091, cfg.max_carrier);
    let kind = TheoryKind::FinFn;
    for case in 0..cfg.cases {
        report.cases += 1;
        let r = counit_case(&mut g, kind);
        report.run(&format!("counit instance #{case}"), r);
    }
    report
}

fn pair_name(k: usize) -> String {
    format!("P{k}")
}

fn side_objects(interp: &mut ContourInterp, k: usize, pair: &(ObjectList, ObjectList)) {
    interp.object(SideObject { base: pair_name(k), side: contour::Side::Left }, pair.0.clone());
    interp.object(SideObject { base: pair_name(k), side: contour::Side::Right }, pair.1.clone());
}

fn expect_clean(tag: &str, got: contour::CounitReport) -> Result<()> {
    if got.clean() {
        Ok(())
    } else {
        Err(crate::error::Error::Presentation(format!(
            "{tag} contour relations violated: {:?}",
            got.violations.iter().map(|v| v.label.clone()).collect::<Vec<_>>()
        )))
    }
}

fn counit_case(g: &mut Gen, kind: TheoryKind) -> Result<()> {
    // sequential associativity instance traced from the splice associator
    {
        let outer_pair = g.pair();
        let anchor = g.pair();
        let (h1, h2, h3) = (g.pair(), g.pair(), g.pair());
        let outer = NHoleSplice::two(
            g.table(&outer_pair.0, &h1.0),
            g.table(&h1.1, &anchor.0),
            g.table(&anchor.1, &outer_pair.1),
        )?;
        let inner = NHoleSplice::two(
            g.table(&anchor.0, &h2.0),
            g.table(&h2.1, &h3.0),
            g.table(&h3.1, &anchor.1),
        )?;
        let (big, small) = splice_alpha(&outer, &inner)?;
        let new_anchor = (big.morphisms()[0].cod(), big.morphisms()[1].dom());
        let pairs = [&outer_pair, &h1, &anchor, &h2, &h3, &new_anchor];
        let pres = Presentation {
            objects: (0..pairs.len()).map(pair_name).collect(),
            elements: vec![
                Element::SeqSplit { name: "a".into(), dom: pair_name(0), left: pair_name(1), right: pair_name(2) },
                Element::SeqSplit { name: "b".into(), dom: pair_name(2), left: pair_name(3), right: pair_name(4) },
                Element::SeqSplit { name: "c".into(), dom: pair_name(0), left: pair_name(5), right: pair_name(4) },
                Element::SeqSplit { name: "d".into(), dom: pair_name(5), left: pair_name(1), right: pair_name(3) },
            ],
            equations: vec![Equation::SeqAlpha { a: "a".into(), b: "b".into(), c: "c".into(), d: "d".into() }],
        };
        let emitted = contour::contour(&pres)?;
        let expected_gens: usize = pres.elements.iter().map(contour::generator_count).sum();
        let expected_rels: usize = pres.equations.iter().map(contour::relation_count).sum();
        if emitted.generators.len() != expected_gens || emitted.relations.len() != expected_rels {
            return Err(crate::error::Error::Presentation("contour arithmetic is off".into()));
        }
        let mut interp = ContourInterp::default();
        for (k, p) in pairs.iter().enumerate() {
            side_objects(&mut interp, k, p);
        }
        for (name, s) in [("a", &outer), ("b", &inner), ("c", &big), ("d", &small)] {
            for (i, m) in s.morphisms().iter().enumerate() {
                interp.generator(format!("{name}.{i}"), m.clone());
            }
        }
        expect_clean("alpha", contour::check_counit(&emitted, &interp, kind)?)?;
    }

    // unitor instance: ρ(a | b) = c = λ(d | e)
    {
        let outer_pair = g.pair();
        let keep = g.pair();
        let anchor = g.pair();
        let a = NHoleSplice::two(
            g.table(&outer_pair.0, &keep.0),
            g.table(&keep.1, &anchor.0),
            g.table(&anchor.1, &outer_pair.1),
        )?;
        let b = g.table(&anchor.0, &anchor.1);
        let c = splice_rho(&a, &b)?;
        let v_pair = (outer_pair.0.clone(), outer_pair.0.clone());
        let d = NHoleSplice::two(
            Morphism::identity_in(kind, &outer_pair.0),
            c.morphisms()[0].clone(),
            c.morphisms()[1].clone(),
        )?;
        let e = Morphism::identity_in(kind, &outer_pair.0);
        let pairs = [&outer_pair, &keep, &anchor, &v_pair];
        let pres = Presentation {
            objects: (0..pairs.len()).map(pair_name).collect(),
            elements: vec![
                Element::SeqSplit { name: "a".into(), dom: pair_name(0), left: pair_name(1), right: pair_name(2) },
                Element::SeqUnit { name: "b".into(), obj: pair_name(2) },
                Element::Mor { name: "c".into(), dom: pair_name(0), cod: pair_name(1) },
                Element::SeqSplit { name: "d".into(), dom: pair_name(0), left: pair_name(3), right: pair_name(1) },
                Element::SeqUnit { name: "e".into(), obj: pair_name(3) },
            ],
            equations: vec![Equation::SeqUnitors {
                a: "a".into(),
                b: "b".into(),
                c: "c".into(),
                d: "d".into(),
                e: "e".into(),
            }],
        };
        let emitted = contour::contour(&pres)?;
        let mut interp = ContourInterp::default();
        for (k, p) in pairs.iter().enumerate() {
            side_objects(&mut interp, k, p);
        }
        for (i, m) in a.morphisms().iter().enumerate() {
            interp.generator(format!("a.{i}"), m.clone());
        }
        interp.generator("b.0", b.clone());
        interp.generator("c.0", c.morphisms()[0].clone());
        interp.generator("c.1", c.morphisms()[1].clone());
        for (i, m) in d.morphisms().iter().enumerate() {
            interp.generator(format!("d.{i}"), m.clone());
        }
        interp.generator("e.0", e);
        expect_clean("unitor", contour::check_counit(&emitted, &interp, kind)?)?;
    }

    // first laxator instance
    {
        let outer_pair = g.pair();
        let (z1, z2) = (g.pair(), g.pair());
        let outer = ParSplit::new(
            g.table(&outer_pair.0, &z1.0.tensor(&z2.0)),
            g.table(&z1.1.tensor(&z2.1), &outer_pair.1),
            z1.clone(),
            z2.clone(),
        )?;
        let (x1, x2) = (g.pair(), g.pair());
        let left = NHoleSplice::two(
            g.table(&z1.0, &x1.0),
            g.table(&x1.1, &x2.0),
            g.table(&x2.1, &z1.1),
        )?;
        let (u1, u2) = (g.pair(), g.pair());
        let right = NHoleSplice::two(
            g.table(&z2.0, &u1.0),
            g.table(&u1.1, &u2.0),
            g.table(&u2.1, &z2.1),
        )?;
        let (seq_d, par_e, par_f) = duosplice::psi2(&outer, &left, &right)?;
        let w1 = (par_e.f.dom(), par_e.g.cod());
        let w2 = (par_f.f.dom(), par_f.g.cod());
        let pairs = [&outer_pair, &z1, &z2, &x1, &x2, &u1, &u2, &w1, &w2];
        let pres = Presentation {
            objects: (0..pairs.len()).map(pair_name).collect(),
            elements: vec![
                Element::ParSplit { name: "a".into(), dom: pair_name(0), left: pair_name(1), right: pair_name(2) },
                Element::SeqSplit { name: "b".into(), dom: pair_name(1), left: pair_name(3), right: pair_name(4) },
                Element::SeqSplit { name: "c".into(), dom: pair_name(2), left: pair_name(5), right: pair_name(6) },
                Element::SeqSplit { name: "d".into(), dom: pair_name(0), left: pair_name(7), right: pair_name(8) },
                Element::ParSplit { name: "e".into(), dom: pair_name(7), left: pair_name(3), right: pair_name(5) },
                Element::ParSplit { name: "f".into(), dom: pair_name(8), left: pair_name(4), right: pair_name(6) },
            ],
            equations: vec![Equation::Psi2 {
                a: "a".into(),
                b: "b".into(),
                c: "c".into(),
                d: "d".into(),
                e: "e".into(),
                f: "f".into(),
            }],
        };
        let emitted = contour::monoidal_contour(&pres)?;
        let mut interp = ContourInterp::default();
        for (k, p) in pairs.iter().enumerate() {
            side_objects(&mut interp, k, p);
        }
        interp.generator("a.0", outer.f.clone());
        interp.generator("a.1", outer.g.clone());
        for (name, s) in [("b", &left), ("c", &right), ("d", &seq_d)] {
            for (i, m) in s.morphisms().iter().enumerate() {
                interp.generator(format!("{name}.{i}"), m.clone());
            }
        }
        interp.generator("e.0", par_e.f.clone());
        interp.generator("e.1", par_e.g.clone());
        interp.generator("f.0", par_f.f.clone());
        interp.generator("f.1", par_f.g.clone());
        expect_clean("psi2", contour::check_counit(&emitted, &interp, kind)?)?;
    }

    // unit laxator instances traced from ψ₀ and φ₀
    {
        let outer_pair = g.pair();
        let unit = ObjectList::unit();
        let pu = ParUnit::new(g.table(&outer_pair.0, &unit), g.table(&unit, &outer_pair.1))?;
        let (seq_b, pure_c, pure_d) = duosplice::psi0(&pu)?;
        let fused = duosplice::phi0(&pu)?;
        let i_pair = (unit.clone(), unit.clone());
        let pairs = [&outer_pair, &i_pair];
        let pres = Presentation {
            objects: (0..pairs.len()).map(pair_name).collect(),
            elements: vec![
                Element::ParUnit { name: "a".into(), obj: pair_name(0) },
                Element::SeqSplit { name: "b".into(), dom: pair_name(0), left: pair_name(1), right: pair_name(1) },
                Element::ParUnit { name: "c".into(), obj: pair_name(1) },
                Element::ParUnit { name: "d".into(), obj: pair_name(1) },
                Element::SeqUnit { name: "n".into(), obj: pair_name(0) },
            ],
            equations: vec![
                Equation::Psi0 { a: "a".into(), b: "b".into(), c: "c".into(), d: "d".into() },
                Equation::Phi0 { a: "a".into(), b: "n".into() },
            ],
        };
        let emitted = contour::monoidal_contour(&pres)?;
        let mut interp = ContourInterp::default();
        for (k, p) in pairs.iter().enumerate() {
            side_objects(&mut interp, k, p);
        }
        interp.generator("a.0", pu.f.clone());
        interp.generator("a.1", pu.g.clone());
        for (i, m) in seq_b.morphisms().iter().enumerate() {
            interp.generator(format!("b.{i}"), m.clone());
        }
        interp.generator("c.0", pure_c.f.clone());
        interp.generator("c.1", pure_c.g.clone());
        interp.generator("d.0", pure_d.f.clone());
        interp.generator("d.1", pure_d.g.clone());
        interp.generator("n.0", fused);
        expect_clean("unit laxators", contour::check_counit(&emitted, &interp, kind)?)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> LawConfig {
        LawConfig { seed: 7, cases: 12, max_carrier: 2, ..Default::default() }
    }

    #[test]
    fn all_families_pass_on_a_small_budget() {
        for report in run_all(&small()) {
            assert!(report.passed(), "{} failed: {:?}", report.name, report.failures);
        }
    }

    #[test]
    fn mutated_laxator_is_caught() {
        let report = produoidal_coherence_mutated(&small());
        assert!(!report.passed(), "the flipped laxator slipped through");
    }

    #[test]
    fn reports_render_deterministically() {
        let a = render(&run_all(&small()));
        let b = render(&run_all(&small()));
        assert_eq!(a, b);
        assert!(a.contains("splice-coherence"));
    }

    #[test]
    fn zero_cases_is_a_vacuous_pass() {
        let cfg = LawConfig { seed: 1, cases: 0, max_carrier: 2, ..Default::default() };
        for report in run_all(&cfg) {
            assert!(report.passed(), "{} failed", report.name);
        }
    }
}
