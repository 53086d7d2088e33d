//! The three-way-handshake corpus: a desk-scale exact encoding of the
//! connection setup exchange between a client and a server.
//!
//! Counters live in `{0, 1, 2}`: `0` is the failure token, `1` the party's
//! base sequence number, `2` its increment. A message is a `Syn ⊗ Ack` pair
//! (carrier 9) and the zeroed message `(0,0)` marks a corrupted exchange.
//! Step tables transcribe the protocol: the client opens with its base
//! number, the server acknowledges with the incremented one, and every
//! consistency check failure branches to the failure token.

use crate::error::Result;
use crate::lens::Lens;
use crate::object::{Atom, ObjectList};
use crate::rational::{one, Rational};
use crate::session::{self, Party, SessionType};
use crate::theory::{FinFnMorphism, FinStochMorphism, Morphism, TheoryKind};
use num_traits::Zero;

pub const CARRIER: usize = 3;

/// `0 ↦ 0` (failure sticks), `1 ↦ 2` (base to base+1), `2 ↦ 0` (overflow
/// falls back to failure; never reached on the happy path).
fn inc(v: usize) -> usize {
    match v {
        1 => 2,
        _ => 0,
    }
}

pub fn client_obj() -> ObjectList {
    ObjectList::single(Atom::new("Client", CARRIER))
}

pub fn server_obj() -> ObjectList {
    ObjectList::single(Atom::new("Server", CARRIER))
}

pub fn msg_obj() -> ObjectList {
    ObjectList(vec![Atom::new("Syn", CARRIER), Atom::new("Ack", CARRIER)])
}

/// Human-readable labels for the outcome states, matching the wire numbers
/// `10/11` (client) and `20/21` (server).
pub fn client_labels() -> Vec<String> {
    vec!["CLI:00".into(), "CLI:10".into(), "CLI:11".into()]
}

pub fn server_labels() -> Vec<String> {
    vec!["SRV:00".into(), "SRV:20".into(), "SRV:21".into()]
}

fn lift(kind: TheoryKind, f: FinFnMorphism) -> Morphism {
    match kind {
        TheoryKind::FinStoch => Morphism::FinStoch(FinStochMorphism::from_table(&f)),
        _ => Morphism::FinFn(f),
    }
}

/// `Client → Client ⊗ Msg`: adopt the base number and send `(base, 0)`.
fn client_open(kind: TheoryKind) -> Morphism {
    let dom = client_obj();
    let cod = dom.tensor(&msg_obj());
    let point = cod.encode(&[1, 1, 0]);
    lift(kind, FinFnMorphism::new(dom, cod, vec![point; CARRIER]).unwrap())
}

/// `Client ⊗ Msg → Client ⊗ Msg`: on `(c, s, a)`, accept when `s = c + 1`,
/// then move to `c + 1` and answer `(c + 1, a + 1)`; otherwise fail to zero.
fn client_ack(kind: TheoryKind) -> Morphism {
    let obj = client_obj().tensor(&msg_obj());
    let mut table = Vec::with_capacity(obj.carrier());
    for idx in 0..obj.carrier() {
        let d = obj.decode(idx);
        let (c, s, a) = (d[0], d[1], d[2]);
        let out = if s == inc(c) { [inc(c), inc(c), inc(a)] } else { [0, 0, 0] };
        table.push(obj.encode(&out));
    }
    lift(kind, FinFnMorphism::new(obj.clone(), obj, table).unwrap())
}

/// `Server ⊗ Msg → Server ⊗ Msg`: on `(v, s, a)`, a live `s` makes the
/// server adopt its base number and answer `(s + 1, base)`; a zeroed message
/// fails everything.
fn server_synack(kind: TheoryKind) -> Morphism {
    let obj = server_obj().tensor(&msg_obj());
    let mut table = Vec::with_capacity(obj.carrier());
    for idx in 0..obj.carrier() {
        let d = obj.decode(idx);
        let s = d[1];
        let out = if s == 0 { [0, 0, 0] } else { [1, inc(s), 1] };
        table.push(obj.encode(&out));
    }
    lift(kind, FinFnMorphism::new(obj.clone(), obj, table).unwrap())
}

/// `Server ⊗ Msg → Server`: accept the final acknowledgement when
/// `a = v + 1` and advance to `v + 1`; otherwise fail to zero.
fn server_recv(kind: TheoryKind) -> Morphism {
    let dom = server_obj().tensor(&msg_obj());
    let cod = server_obj();
    let mut table = Vec::with_capacity(dom.carrier());
    for idx in 0..dom.carrier() {
        let d = dom.decode(idx);
        let (v, a) = (d[0], d[2]);
        table.push(if a == inc(v) { inc(v) } else { 0 });
    }
    lift(kind, FinFnMorphism::new(dom, cod, table).unwrap())
}

fn identity(kind: TheoryKind, obj: &ObjectList) -> Morphism {
    Morphism::identity_in(kind, obj)
}

fn msg_session(src: &str) -> SessionType {
    SessionType::parse(src, |name| (name == "Msg").then(msg_obj)).expect("fixed session parses")
}

/// The client party at `!Msg ◁ ?Msg ◁ !Msg`.
pub fn client_party(kind: TheoryKind) -> Party {
    let c = client_obj();
    Party {
        name: "client".into(),
        state_in: c.clone(),
        state_out: c.clone(),
        session: msg_session("!Msg < ?Msg < !Msg"),
        steps: vec![client_open(kind), identity(kind, &c), client_ack(kind), identity(kind, &c)],
    }
}

/// The server party at `?Msg ◁ !Msg ◁ ?Msg`.
pub fn server_party(kind: TheoryKind) -> Party {
    let s = server_obj();
    Party {
        name: "server".into(),
        state_in: s.clone(),
        state_out: s.clone(),
        session: msg_session("?Msg < !Msg < ?Msg"),
        steps: vec![identity(kind, &s), server_synack(kind), identity(kind, &s), server_recv(kind)],
    }
}

/// The per-stage noisy channel: pass the message through with probability
/// `1 - p`, zero it with probability `p`.
pub fn noise_channel(p: &Rational) -> Result<Morphism> {
    noise_channel_over(&msg_obj(), p)
}

/// Noise over an arbitrary object whose zero state is index 0.
pub fn noise_channel_over(obj: &ObjectList, p: &Rational) -> Result<Morphism> {
    let n = obj.carrier();
    let keep = one() - p;
    let mut matrix = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[i] += keep.clone();
        row[0] += p.clone();
        matrix.push(row);
    }
    Ok(Morphism::FinStoch(FinStochMorphism::new(obj.clone(), obj.clone(), matrix)?))
}

/// Type-checks both parties, interleaves them and fills the three fused
/// holes with copies of the channel. Returns the closed morphism over
/// `Client ⊗ Server`.
pub fn compose_handshake(client: &Party, server: &Party, channel: &Morphism) -> Result<Morphism> {
    let lc = session::type_check(client)?;
    let ls = session::type_check(server)?;
    let (combined, _warnings) = session::interleave(&lc, &client.session, &ls, &server.session)?;
    let channels = vec![channel.clone(); combined.stages()];
    session::fill_channels(&combined, &channels)
}

/// The interleaved but unfilled protocol lens (three `(Msg, Msg)` holes).
pub fn combined_lens(kind: TheoryKind) -> Result<Lens> {
    let client = client_party(kind);
    let server = server_party(kind);
    let lc = session::type_check(&client)?;
    let ls = session::type_check(&server)?;
    Ok(session::interleave(&lc, &client.session, &ls, &server.session)?.0)
}

/// Joint success state `(c+1, v+1)` of the composed protocol.
pub fn success_index() -> usize {
    client_obj().tensor(&server_obj()).encode(&[2, 2])
}

/// Projection discarding a scratch `Ack` register next to the client state.
fn client_junk_obj() -> ObjectList {
    client_obj().tensor(&ObjectList::single(Atom::new("Ack", CARRIER)))
}

fn project_client(kind: TheoryKind) -> Morphism {
    let junk = ObjectList::single(Atom::new("Ack", CARRIER));
    lift(kind, FinFnMorphism::project(&ObjectList::unit(), &client_obj(), &junk))
}

/// Client variant that keeps a scratch server-number register in its memory
/// through the first exchange and projects it away only when acknowledging:
/// the `(open ⨾ keep | project ⨾ ack)` decomposition.
pub fn client_keeping_junk(kind: TheoryKind) -> Party {
    let c = client_obj();
    let cj = client_junk_obj();
    let open_big = {
        let cod = cj.tensor(&msg_obj());
        let point = cod.encode(&[1, 0, 1, 0]);
        lift(kind, FinFnMorphism::new(c.clone(), cod, vec![point; CARRIER]).unwrap())
    };
    let prj = project_client(kind);
    let ack_after_prj = prj
        .tensor(&identity(kind, &msg_obj()))
        .and_then(|m| m.compose(&client_ack(kind)))
        .expect("projection composes with the acknowledge step");
    Party {
        name: "client-keeping-junk".into(),
        state_in: c.clone(),
        state_out: c,
        session: msg_session("!Msg < ?Msg < !Msg"),
        steps: vec![open_big, identity(kind, &cj), ack_after_prj, identity(kind, &client_obj())],
    }
}

/// The same client with the scratch register projected away immediately
/// after opening: the `(open ⨾ project | ack)` decomposition. Dinaturality
/// makes it equivalent to [`client_keeping_junk`].
pub fn client_projecting_early(kind: TheoryKind) -> Party {
    client_party(kind)
}

/// A third equivalent decomposition: the scratch register is dropped during
/// the wait between sending and receiving, rather than before or after it.
pub fn client_projecting_midway(kind: TheoryKind) -> Party {
    let mut party = client_keeping_junk(kind);
    party.steps[1] = project_client(kind);
    party.steps[2] = client_ack(kind);
    party.name = "client-projecting-midway".into();
    party
}

/// A deliberately broken variant of [`client_keeping_junk`] whose final
/// acknowledgement zeroes its own state; used as the negative control.
pub fn client_keeping_junk_perturbed(kind: TheoryKind) -> Party {
    let mut party = client_keeping_junk(kind);
    let obj = client_obj().tensor(&msg_obj());
    let mut table = Vec::with_capacity(obj.carrier());
    for idx in 0..obj.carrier() {
        let d = obj.decode(idx);
        let (c, s) = (d[0], d[1]);
        // drops the acknowledgement number and forgets to advance the state
        let out = if s == inc(c) { [c, inc(c), 0] } else { [0, 0, 0] };
        table.push(obj.encode(&out));
    }
    let broken = lift(kind, FinFnMorphism::new(obj.clone(), obj, table).unwrap());
    let prj = project_client(kind);
    party.steps[2] = prj
        .tensor(&identity(kind, &msg_obj()))
        .and_then(|m| m.compose(&broken))
        .expect("projection composes with the broken step");
    party.name = "client-perturbed".into();
    party
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{format_ratio, ratio};
    use crate::session::{dinaturality_refactor_check, outcome_distribution, Initial};

    #[test]
    fn parties_type_check() {
        for kind in [TheoryKind::FinFn, TheoryKind::FinStoch] {
            session::type_check(&client_party(kind)).unwrap();
            session::type_check(&server_party(kind)).unwrap();
        }
    }

    #[test]
    fn interleaving_fuses_every_stage_to_a_message_hole() {
        let combined = combined_lens(TheoryKind::FinFn).unwrap();
        assert_eq!(combined.stages(), 3);
        for hole in combined.holes() {
            assert_eq!(hole, &(msg_obj(), msg_obj()));
        }
        assert_eq!(combined.outer(), (client_obj().tensor(&server_obj()), client_obj().tensor(&server_obj())));
    }

    #[test]
    fn swapped_polarities_are_rejected() {
        let mut server = server_party(TheoryKind::FinFn);
        server.session = msg_session("!Msg < ?Msg < !Msg");
        match session::type_check(&server) {
            Err(crate::error::Error::StageBoundary { stage, .. }) => assert_eq!(stage, 1),
            other => panic!("expected a stage-1 boundary error, got {other:?}"),
        }
    }

    #[test]
    fn noiseless_run_succeeds_with_certainty() {
        let kind = TheoryKind::FinStoch;
        let channel = noise_channel(&Rational::zero()).unwrap();
        let closed = compose_handshake(&client_party(kind), &server_party(kind), &channel).unwrap();
        assert_eq!(closed.dom().carrier(), 9);
        let initial = client_obj().tensor(&server_obj()).encode(&[0, 0]);
        let out = outcome_distribution(&closed, &Initial::Point(initial)).unwrap();
        assert_eq!(out, vec![(success_index(), one())]);
    }

    #[test]
    fn tenth_noise_gives_729_over_1000() {
        let kind = TheoryKind::FinStoch;
        let channel = noise_channel(&ratio(1, 10)).unwrap();
        let closed = compose_handshake(&client_party(kind), &server_party(kind), &channel).unwrap();
        let out = outcome_distribution(&closed, &Initial::Point(0)).unwrap();
        let success = out.iter().find(|(i, _)| *i == success_index()).unwrap();
        assert_eq!(format_ratio(&success.1), "729/1000");
        let total: Rational = out.iter().map(|(_, p)| p.clone()).sum();
        assert_eq!(total, one());
    }

    #[test]
    fn full_noise_fails_with_certainty() {
        let kind = TheoryKind::FinStoch;
        let channel = noise_channel(&one()).unwrap();
        let closed = compose_handshake(&client_party(kind), &server_party(kind), &channel).unwrap();
        let out = outcome_distribution(&closed, &Initial::Point(0)).unwrap();
        let zero_state = client_obj().tensor(&server_obj()).encode(&[0, 0]);
        assert_eq!(out, vec![(zero_state, one())]);
    }

    #[test]
    fn finfn_variant_equals_identity_channel_run() {
        // deterministic tables with the identity channel reduce to FinFn
        let kind = TheoryKind::FinFn;
        let channel = Morphism::identity_in(kind, &msg_obj());
        let closed = compose_handshake(&client_party(kind), &server_party(kind), &channel).unwrap();
        let joint = client_obj().tensor(&server_obj());
        assert_eq!(closed.as_finfn().unwrap().table[joint.encode(&[0, 0])], success_index());
        // the stochastic run with a zero-noise channel matches pointwise
        let skind = TheoryKind::FinStoch;
        let szero = noise_channel(&Rational::zero()).unwrap();
        let sclosed = compose_handshake(&client_party(skind), &server_party(skind), &szero).unwrap();
        let lifted = FinStochMorphism::from_table(closed.as_finfn().unwrap());
        assert!(sclosed.equal(&Morphism::FinStoch(lifted)).unwrap());
    }

    #[test]
    fn refactoring_is_dinaturally_equivalent() {
        for kind in [TheoryKind::FinFn, TheoryKind::FinStoch] {
            let report = dinaturality_refactor_check(
                &client_keeping_junk(kind),
                &client_projecting_early(kind),
            )
            .unwrap();
            assert!(report.equivalent, "refactor check failed for {kind:?}");
        }
    }

    #[test]
    fn refactoring_check_is_symmetric_and_transitive_on_the_family() {
        let kind = TheoryKind::FinFn;
        let variants =
            [client_keeping_junk(kind), client_projecting_midway(kind), client_projecting_early(kind)];
        for a in &variants {
            for b in &variants {
                let forward = dinaturality_refactor_check(a, b).unwrap();
                let backward = dinaturality_refactor_check(b, a).unwrap();
                assert!(forward.equivalent && backward.equivalent);
            }
        }
    }

    #[test]
    fn composite_matches_a_direct_simulation() {
        // identity channels and deterministic parties: compare the composed
        // table against stepping the exchange by hand
        let kind = TheoryKind::FinFn;
        let channel = Morphism::identity_in(kind, &msg_obj());
        let closed = compose_handshake(&client_party(kind), &server_party(kind), &channel).unwrap();
        let table = &closed.as_finfn().unwrap().table;

        let obj_cm = client_obj().tensor(&msg_obj());
        let obj_sm = server_obj().tensor(&msg_obj());
        let open = client_open(kind);
        let ack = client_ack(kind);
        let synack = server_synack(kind);
        let recv = server_recv(kind);
        let joint = client_obj().tensor(&server_obj());
        for c in 0..CARRIER {
            for sv in 0..CARRIER {
                // client opens
                let cm = open.as_finfn().unwrap().table[c];
                let d = obj_cm.decode(cm);
                let (c1, msg1) = (d[0], [d[1], d[2]]);
                // server acknowledges
                let sm = synack.as_finfn().unwrap().table[obj_sm.encode(&[sv, msg1[0], msg1[1]])];
                let d = obj_sm.decode(sm);
                let (sv1, msg2) = (d[0], [d[1], d[2]]);
                // client closes the exchange
                let cm = ack.as_finfn().unwrap().table[obj_cm.encode(&[c1, msg2[0], msg2[1]])];
                let d = obj_cm.decode(cm);
                let (c2, msg3) = (d[0], [d[1], d[2]]);
                // server receives the final acknowledgement
                let sv2 = recv.as_finfn().unwrap().table[obj_sm.encode(&[sv1, msg3[0], msg3[1]])];
                let expected = joint.encode(&[c2, sv2]);
                assert_eq!(table[joint.encode(&[c, sv])], expected, "diverged at ({c}, {sv})");
            }
        }
    }

    #[test]
    fn perturbed_refactoring_is_detected_with_witness() {
        let kind = TheoryKind::FinStoch;
        let report = dinaturality_refactor_check(
            &client_keeping_junk_perturbed(kind),
            &client_projecting_early(kind),
        )
        .unwrap();
        assert!(!report.equivalent);
        let fills = report.separating_fills.expect("a separating filling is reported");
        assert_eq!(fills.len(), 3);
    }
}
