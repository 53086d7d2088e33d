//! Polarized session types and multi-party protocol composition.
//!
//! A party is a state machine whose steps follow a session type: at a send
//! stage it emits a message next to its residual memory, at a receive stage
//! it consumes one. Type checking assembles the steps into a staged lens;
//! interleaving tensors two parties stage by stage; filling the fused
//! communication holes with channels closes the protocol into one morphism.

use crate::error::{Error, Result};
use crate::lens::{lens_laxator_tensor, probe_separating_fills, Lens, Polarized};
use crate::object::ObjectList;
use crate::rational::{zero, Rational};
use crate::splice::HoleType;
use crate::theory::Morphism;
use num_traits::Zero;

/// A `◁`-ordered list of stages, each a `⊗`-list of polarized objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionType {
    pub stages: Vec<Vec<Polarized>>,
}

impl SessionType {
    pub fn new(stages: Vec<Vec<Polarized>>) -> Result<Self> {
        if stages.is_empty() || stages.iter().any(|s| s.is_empty()) {
            return Err(Error::Protocol("session type needs at least one non-empty stage".into()));
        }
        Ok(SessionType { stages })
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// The lens hole a stage denotes: sends tensor into the first component,
    /// receives into the second, in stage order.
    pub fn stage_hole(&self, k: usize) -> HoleType {
        let mut x = ObjectList::unit();
        let mut y = ObjectList::unit();
        for p in &self.stages[k] {
            match p {
                Polarized::Send(o) => x = x.tensor(o),
                Polarized::Get(o) => y = y.tensor(o),
            }
        }
        (x, y)
    }

    pub fn holes(&self) -> Vec<HoleType> {
        (0..self.len()).map(|k| self.stage_hole(k)).collect()
    }

    /// Parses the concrete syntax `!Msg < ?Msg < !Msg`: stages separated by
    /// `<`, tensor within a stage by `*`, polarities `!` (send) / `?` (get).
    /// `I` is the unit object; other names go through the resolver.
    pub fn parse(src: &str, resolve: impl Fn(&str) -> Option<ObjectList>) -> Result<Self> {
        let mut stages = Vec::new();
        for stage_src in src.split('<') {
            let mut stage = Vec::new();
            for item in stage_src.split('*') {
                let item = item.trim();
                if item.len() < 2 {
                    return Err(Error::Protocol(format!("bad item `{item}` in session type `{src}`")));
                }
                let (polarity, name) = item.split_at(1);
                let name = name.trim();
                let obj = if name == "I" {
                    ObjectList::unit()
                } else {
                    resolve(name).ok_or_else(|| {
                        Error::Protocol(format!("unknown object `{name}` in session type"))
                    })?
                };
                match polarity {
                    "!" => stage.push(Polarized::Send(obj)),
                    "?" => stage.push(Polarized::Get(obj)),
                    other => {
                        return Err(Error::Protocol(format!(
                            "expected `!` or `?` before `{name}`, found `{other}`"
                        )))
                    }
                }
            }
            stages.push(stage);
        }
        SessionType::new(stages)
    }
}

impl std::fmt::Display for SessionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let stages: Vec<String> = self
            .stages
            .iter()
            .map(|s| {
                s.iter()
                    .map(|p| match p {
                        Polarized::Send(o) => format!("!{o}"),
                        Polarized::Get(o) => format!("?{o}"),
                    })
                    .collect::<Vec<_>>()
                    .join(" * ")
            })
            .collect();
        write!(f, "{}", stages.join(" < "))
    }
}

/// A named protocol participant: steps `f₀ … fₙ` with
/// `fₖ : Rₖ ⊗ Yₖ → Rₖ₊₁ ⊗ Xₖ₊₁` between the session's polarized stages.
#[derive(Clone, Debug)]
pub struct Party {
    pub name: String,
    pub state_in: ObjectList,
    pub state_out: ObjectList,
    pub session: SessionType,
    pub steps: Vec<Morphism>,
}

/// Assembles a party's steps into its staged lens, or reports the first
/// stage whose boundary does not match the session type.
pub fn type_check(party: &Party) -> Result<Lens> {
    let n = party.session.len();
    if party.steps.is_empty() {
        return Err(Error::StageBoundary {
            party: party.name.clone(),
            stage: 0,
            reason: "party has no steps".into(),
        });
    }
    if party.steps.len() != n + 1 {
        return Err(Error::StageBoundary {
            party: party.name.clone(),
            stage: 0,
            reason: format!("{} stages need {} steps, found {}", n, n + 1, party.steps.len()),
        });
    }
    let err = |stage: usize, reason: String| Error::StageBoundary {
        party: party.name.clone(),
        stage,
        reason,
    };
    if party.steps[0].dom() != party.state_in {
        return Err(err(
            1,
            format!("first step starts at {}, party state is {}", party.steps[0].dom(), party.state_in),
        ));
    }
    let holes = party.session.holes();
    let mut residuals = Vec::with_capacity(n);
    for (k, (x, y)) in holes.iter().enumerate() {
        let cod = party.steps[k].cod();
        let residual = cod.strip_suffix(x).ok_or_else(|| {
            err(k + 1, format!("step {k} produces {cod}, expected a residual followed by the sent {x}"))
        })?;
        let want_dom = residual.tensor(y);
        let dom = party.steps[k + 1].dom();
        if dom != want_dom {
            return Err(err(
                k + 1,
                format!("step {} consumes {dom}, expected the residual with the received {y} ({want_dom})", k + 1),
            ));
        }
        residuals.push(residual);
    }
    let last = party.steps[n].cod();
    if last != party.state_out {
        return Err(err(n, format!("final step ends at {last}, party state is {}", party.state_out)));
    }
    Lens::new(party.steps.clone(), residuals, holes)
}

/// Stage-wise tensor of two party lenses. Polarity complementarity is not
/// required; a warning names each stage where traffic flows one way with no
/// counterpart on the other side.
pub fn interleave(
    p: &Lens,
    p_session: &SessionType,
    q: &Lens,
    q_session: &SessionType,
) -> Result<(Lens, Vec<String>)> {
    if p.stages() != q.stages() {
        return Err(Error::StageCount(p.stages(), q.stages()));
    }
    let combined = lens_laxator_tensor(p, q)?;
    let mut warnings = Vec::new();
    for k in 0..combined.stages() {
        let (x, y) = &combined.holes()[k];
        if x.is_unit() != y.is_unit() {
            let what = if y.is_unit() { "sends with no receiver" } else { "receives with no sender" };
            warnings.push(format!(
                "stage {}: no send/receive pairing ({what}; stage types {} and {})",
                k + 1,
                p_session.stage_hole(k).0,
                q_session.stage_hole(k).1,
            ));
        }
    }
    Ok((combined, warnings))
}

/// Closes each fused communication hole with a channel morphism, yielding
/// the protocol as one morphism between joint states.
pub fn fill_channels(combined: &Lens, channels: &[Morphism]) -> Result<Morphism> {
    if channels.len() != combined.stages() {
        return Err(Error::StageCount(combined.stages(), channels.len()));
    }
    for (k, (c, hole)) in channels.iter().zip(combined.holes()).enumerate() {
        if c.dom() != hole.0 || c.cod() != hole.1 {
            return Err(Error::ChannelType {
                stage: k + 1,
                expected: format!("{} -> {}", hole.0, hole.1),
                found: format!("{} -> {}", c.dom(), c.cod()),
            });
        }
    }
    combined.fill_all(&channels.iter().collect::<Vec<_>>())
}

/// An initial joint state: a single point or an exact distribution.
#[derive(Clone, Debug)]
pub enum Initial {
    Point(usize),
    Dist(Vec<Rational>),
}

/// Exact outcome distribution of a composed stochastic protocol from an
/// initial state: the nonzero entries of the resulting row, summing to one.
pub fn outcome_distribution(m: &Morphism, initial: &Initial) -> Result<Vec<(usize, Rational)>> {
    let stoch = m.as_finstoch()?;
    let states = stoch.dom.carrier();
    let row: Vec<Rational> = match initial {
        Initial::Point(i) => {
            if *i >= states {
                return Err(Error::Protocol(format!("initial state {i} out of range (carrier {states})")));
            }
            stoch.matrix[*i].clone()
        }
        Initial::Dist(d) => {
            if d.len() != states {
                return Err(Error::Protocol(format!(
                    "initial distribution has {} entries, state carrier is {states}",
                    d.len()
                )));
            }
            let sum: Rational = d.iter().cloned().sum();
            if sum != crate::rational::one() {
                return Err(Error::Protocol("initial distribution does not sum to 1".into()));
            }
            let cols = stoch.cod.carrier();
            let mut out = vec![zero(); cols];
            for (i, w) in d.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for (j, entry) in stoch.matrix[i].iter().enumerate() {
                    if !entry.is_zero() {
                        out[j] += w * entry;
                    }
                }
            }
            out
        }
    };
    Ok(row.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect())
}

/// Verdict of comparing two step-decompositions of the same party.
#[derive(Clone, Debug)]
pub struct RefactorReport {
    pub equivalent: bool,
    /// Stage fills witnessing the difference, when the probing family finds
    /// one. Canonical-form differences over finite functions may have no
    /// single-probe witness.
    pub separating_fills: Option<Vec<Morphism>>,
}

/// Checks that two decompositions of one party assemble to the same lens up
/// to dinaturality.
pub fn dinaturality_refactor_check(a: &Party, b: &Party) -> Result<RefactorReport> {
    let la = type_check(a)?;
    let lb = type_check(b)?;
    if la.outer() != lb.outer() || la.holes() != lb.holes() {
        return Err(Error::ShapeMismatch {
            expected: format!("both parties typed at {}", a.session),
            found: format!("{} vs {}", a.session, b.session),
        });
    }
    let equivalent = crate::lens::lens_equal(&la, &lb)?;
    let separating_fills = if equivalent { None } else { probe_separating_fills(&la, &lb)? };
    Ok(RefactorReport { equivalent, separating_fills })
}
