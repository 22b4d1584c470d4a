//! Builtin scenarios.
//!
//! Sizes are chosen here, not taken from any published figure: unit agents,
//! with hubs and poles a few times larger. Sequences share an id prefix and
//! are numbered in time order (`chain-ganging/t1`, `chain-ganging/t2`, ...).

use std::sync::OnceLock;

use princerank_core::ModelParams;

use crate::scenario::{Edge, ScenarioDoc, Sign};
use crate::ScenarioError;

const P: Sign = Sign::Positive;
const N: Sign = Sign::Negative;

#[derive(Clone)]
struct Build(ScenarioDoc);

fn scenario(id: &str, description: &str, sizes: &[f64]) -> Build {
    Build(ScenarioDoc {
        id: id.to_owned(),
        description: description.to_owned(),
        params: ModelParams::default(),
        sizes: sizes.to_vec(),
        edges: Vec::new(),
        tags: Vec::new(),
    })
}

impl Build {
    fn renamed(&self, id: &str, description: &str) -> Build {
        let mut b = self.clone();
        b.0.id = id.to_owned();
        b.0.description = description.to_owned();
        b
    }

    fn sizes(mut self, sizes: &[f64]) -> Self {
        assert_eq!(sizes.len(), self.0.sizes.len());
        self.0.sizes = sizes.to_vec();
        self
    }

    /// Sets `from`'s stance toward `to`, replacing any earlier one.
    fn to(mut self, from: usize, to: usize, sign: Sign) -> Self {
        self = self.drop(from, to);
        self.0.edges.push(Edge::new(from, to, sign));
        self
    }

    fn weighted(mut self, from: usize, to: usize, weight: f64) -> Self {
        self = self.drop(from, to);
        self.0.edges.push(Edge::weighted(from, to, weight));
        self
    }

    fn mutual(self, a: usize, b: usize, sign: Sign) -> Self {
        self.to(a, b, sign).to(b, a, sign)
    }

    /// `hub` and every spoke support each other.
    fn star(self, hub: usize, spokes: &[usize]) -> Self {
        spokes.iter().fold(self, |b, &s| b.mutual(hub, s, P))
    }

    fn drop(mut self, from: usize, to: usize) -> Self {
        self.0.edges.retain(|e| (e.from, e.to) != (from, to));
        self
    }

    fn cut(self, a: usize, b: usize) -> Self {
        self.drop(a, b).drop(b, a)
    }

    fn tags(mut self, tags: &[&str]) -> Self {
        self.0.tags = tags.iter().map(|t| (*t).to_owned()).collect();
        self
    }

    fn done(mut self) -> ScenarioDoc {
        self.0.edges.sort_by_key(|e| (e.from, e.to));
        self.0
    }
}

/// Two hub-and-spoke clusters: pole 1 with agents 2 and 3, pole 4 with 5
/// and 6. `relation` is the stance of the poles toward each other.
pub fn bipolar_pair(pole_a: f64, pole_b: f64, relation: Option<Sign>) -> ScenarioDoc {
    bipolar_build(pole_a, pole_b, relation).done()
}

fn bipolar_build(pole_a: f64, pole_b: f64, relation: Option<Sign>) -> Build {
    let b = scenario("bipolar", "two clusters around poles 1 and 4", &[pole_a, 1.0, 1.0, pole_b, 1.0, 1.0])
        .star(1, &[2, 3])
        .star(4, &[5, 6]);
    match relation {
        Some(s) => b.mutual(1, 4, s),
        None => b,
    }
}

/// Four agents; agent 4 has size `dominant` and stays neutral. With
/// `united`, agents 1 and 2 support each other.
pub fn unity_presence(dominant: f64, united: bool) -> ScenarioDoc {
    let b = scenario("unity-presence", "", &[1.0, 1.0, 1.0, dominant]);
    if united { b.mutual(1, 2, P) } else { b }.done()
}

/// Agent 4 (size `dominant`) attacks agents 1 and 2, which hit back. With
/// `united` they also support each other, paid out of what they keep rather
/// than out of their defense.
pub fn unity_aggression(dominant: f64, united: bool) -> ScenarioDoc {
    let w = 0.05;
    let b = scenario("unity-aggression", "", &[1.0, 1.0, 1.0, dominant])
        .weighted(4, 1, -w)
        .weighted(4, 2, -w)
        .weighted(1, 4, -w)
        .weighted(2, 4, -w);
    if united { b.weighted(1, 2, w).weighted(2, 1, w) } else { b }.done()
}

fn triad(id: &str, description: &str, relations: [Option<Sign>; 3], tags: &[&str]) -> ScenarioDoc {
    let pairs = [(1, 2), (1, 3), (2, 3)];
    let mut b = scenario(id, description, &[1.0; 3]);
    for ((a, c), r) in pairs.into_iter().zip(relations) {
        if let Some(s) = r {
            b = b.mutual(a, c, s);
        }
    }
    b.tags(tags).done()
}

fn build_corpus() -> Vec<ScenarioDoc> {
    let mut out = Vec::new();
    let best = ["triad", "most-preferred"];
    let worst = ["triad", "least-preferred"];
    out.extend([
        triad("triad-schadenfreude", "agents 2 and 3 destroy each other while agent 1 watches", [None, None, Some(N)], &best),
        triad("triad-hub", "agent 1 at the center of mutual support with both others", [Some(P), Some(P), None], &best),
        triad("triad-ally", "agent 1 and agent 2 are allies; agent 3 is alone", [Some(P), None, None], &best),
        triad("triad-composite", "agent 1 supported by two allies that fight each other", [Some(P), Some(P), Some(N)], &best),
        triad("triad-attacked-by-both", "agents 2 and 3 both fight agent 1", [Some(N), Some(N), None], &worst),
        triad("triad-attacked-by-alliance", "allied agents 2 and 3 both fight agent 1", [Some(N), Some(N), Some(P)], &worst),
        triad("triad-attacked-by-one", "agent 3 fights agent 1; agent 2 stays out", [None, Some(N), None], &worst),
    ]);

    out.push(
        scenario("hub-ideal", "every other agent supports agent 1, which gives nothing back", &[1.0; 4])
            .to(2, 1, P)
            .to(3, 1, P)
            .to(4, 1, P)
            .tags(&["structural-ideal", "hub"])
            .done(),
    );

    let sizes = [2.0, 1.0, 1.0, 2.0, 1.0, 1.0];
    out.push(
        scenario("polarity/unipolar", "agent 1 at the center of everyone", &sizes)
            .star(1, &[2, 3, 4, 5, 6])
            .tags(&["unipolar"])
            .done(),
    );
    out.push(
        scenario("polarity/bipolar", "same sizes split into two clusters", &sizes)
            .star(1, &[2, 3])
            .star(4, &[5, 6])
            .tags(&["bipolar"])
            .done(),
    );

    // hierarchy formation
    let tags = ["unipolar", "tributary"];
    let base = scenario("", "", &[4.0, 1.0, 1.0]).mutual(1, 2, P).to(3, 2, N).tags(&tags);
    out.push(base.renamed("tributary-defense/ignore", "agent 3 attacks agent 1's tributary; agent 1 does nothing").done());
    out.push(
        base.renamed("tributary-defense/defend", "agent 1 attacks agent 3 to defend its tributary")
            .to(1, 3, N)
            .done(),
    );
    let matched = base.clone().sizes(&[1.2, 1.0, 1.0]);
    out.push(matched.renamed("tributary-defense/matched-ignore", "as ignore, with agent 1 barely larger than its tributary").done());
    out.push(
        matched
            .renamed("tributary-defense/matched-defend", "as defend, with agent 1 barely larger than its tributary")
            .to(1, 3, N)
            .done(),
    );
    let t1 = scenario("tributary-coercion/t1", "agent 2 allied with agent 1 and with agent 1's enemy 3", &[3.0, 1.0, 1.0])
        .mutual(1, 2, P)
        .mutual(2, 3, P)
        .mutual(1, 3, N)
        .tags(&tags);
    out.push(t1.clone().done());
    out.push(
        t1.renamed("tributary-coercion/t2a", "agent 2 keeps agent 3; agent 1 withdraws its support")
            .drop(1, 2)
            .done(),
    );
    out.push(
        t1.renamed("tributary-coercion/t2b", "agent 2 joins agent 1 against agent 3")
            .mutual(2, 3, N)
            .done(),
    );
    let ex = scenario("", "", &[3.0, 1.0, 3.0]).mutual(1, 2, P).tags(&tags);
    out.push(ex.renamed("tributary-exclusive/sole", "agent 2 pays tribute to agent 1 only").done());
    out.push(
        ex.renamed("tributary-exclusive/shared", "agent 2 pays tribute to agents 1 and 3")
            .mutual(2, 3, P)
            .done(),
    );

    // maintaining order
    let tags = ["unipolar", "hegemony"];
    let hub = scenario("hegemony/hub", "agent 1 at the center of four tributaries", &[3.0, 1.0, 1.0, 1.0, 1.0])
        .star(1, &[2, 3, 4, 5])
        .tags(&tags);
    out.push(hub.clone().done());
    let infighting = hub.renamed("hegemony/infighting", "tributaries 2 and 3 fight each other").mutual(2, 3, N);
    out.push(infighting.clone().done());
    out.push(
        infighting
            .renamed("hegemony/withhold", "agent 1 stops supporting the fighting tributaries")
            .drop(1, 2)
            .drop(1, 3)
            .done(),
    );
    let collusion = hub.renamed("hegemony/collusion", "tributaries 2 and 3 support each other").mutual(2, 3, P);
    out.push(collusion.clone().done());
    out.push(
        collusion
            .renamed("hegemony/ostracism", "agent 1 stops supporting the colluding tributaries")
            .drop(1, 2)
            .drop(1, 3)
            .done(),
    );
    let w = 0.025;
    let weighted = collusion
        .renamed("hegemony/collusion-weighted", "collusion with agent 1 giving each tributary a fixed amount")
        .weighted(1, 2, w)
        .weighted(1, 3, w)
        .weighted(1, 4, w)
        .weighted(1, 5, w);
    out.push(weighted.clone().done());
    out.push(
        weighted
            .renamed("hegemony/exclusion", "agent 1 excludes the colluders, same amounts to agents 4 and 5")
            .drop(1, 2)
            .drop(1, 3)
            .done(),
    );
    out.push(
        hub.renamed("hegemony/discipline", "agent 2 attacks agent 3; agent 1 attacks agent 2")
            .to(2, 3, N)
            .to(1, 2, N)
            .done(),
    );

    // rebellion
    let tags = ["unipolar", "rebellion"];
    let hub = scenario("rebellion/r0", "agent 1 dominates agents 2 to 5; agent 2 is the largest of them", &[4.0, 2.0, 1.0, 1.0, 1.0])
        .star(1, &[2, 3, 4, 5])
        .tags(&tags);
    out.push(hub.clone().done());
    let mut rebels = hub.clone();
    for k in 1..=4 {
        rebels = rebels.mutual(1, k + 1, N);
        let id = format!("rebellion/r{k}");
        let description = format!("agents 2 to {} fight agent 1", k + 1);
        out.push(rebels.renamed(&id, &description).done());
    }
    out.push(
        rebels
            .renamed("rebellion/rebel-alliance", "all rebel; agents 3 to 5 also support agent 2")
            .to(3, 2, P)
            .to(4, 2, P)
            .to(5, 2, P)
            .done(),
    );
    let after = scenario("rebellion/hub-defeated", "agent 1 is gone; the rebels are smaller and unconnected", &[0.0, 1.2, 0.6, 0.6, 0.6])
        .tags(&tags);
    out.push(after.clone().done());
    out.push(
        after
            .renamed("rebellion/new-order", "agent 2 leads a new hierarchy")
            .star(2, &[3, 4, 5])
            .done(),
    );

    // disintegration
    let tags = ["unipolar", "disintegration"];
    let t1 = scenario("disintegration/t1", "agent 1 dominates a loosely connected network", &[4.0, 1.0, 1.0, 1.5, 1.0, 1.0])
        .star(1, &[2, 3, 4])
        .mutual(2, 3, P)
        .mutual(4, 5, P)
        .mutual(5, 6, N)
        .tags(&tags);
    out.push(t1.clone().done());
    let t2 = t1
        .renamed("disintegration/t2", "agent 1 is weakened; agent 3 supports both agent 1 and agent 4")
        .sizes(&[1.5, 1.0, 1.0, 1.5, 1.0, 1.0])
        .mutual(3, 4, P);
    out.push(t2.clone().done());
    let t3 = t2.renamed("disintegration/t3", "agent 3 sides with agent 1").cut(3, 4);
    out.push(t3.clone().done());
    out.push(
        t3.renamed("disintegration/t4", "agents 4 and 5 withdraw into their own alliance")
            .cut(1, 4)
            .done(),
    );

    let t1 = scenario("uneven-growth/t1", "agent 1 is large; small agent 4 is well connected", &[3.0, 1.0, 1.0, 1.0, 1.0, 1.0])
        .star(1, &[2, 3, 4])
        .star(4, &[3, 5, 6])
        .tags(&tags);
    out.push(t1.clone().done());
    out.push(
        t1.renamed("uneven-growth/t2", "agent 4 has grown into a rival of agent 1")
            .sizes(&[3.5, 1.0, 1.5, 3.0, 1.5, 1.5])
            .done(),
    );

    // bipolar dynamics
    let tags = ["bipolar", "realignment"];
    let base = scenario("", "", &[3.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0])
        .star(1, &[2])
        .star(4, &[5, 6, 7])
        .tags(&tags);
    out.push(base.renamed("realignment/split", "agent 3 supports both poles").star(3, &[1, 4]).done());
    let join1 = base.renamed("realignment/join-1", "agent 3 joins agent 1").mutual(1, 3, P);
    out.push(join1.clone().done());
    out.push(base.renamed("realignment/join-4", "agent 3 joins agent 4").mutual(4, 3, P).done());
    out.push(
        join1
            .renamed("realignment/retaliate", "agent 3 joins agent 1 and agent 4 attacks it")
            .to(4, 3, N)
            .done(),
    );

    let tags = ["bipolar", "divide-and-rule"];
    let rivals = scenario("", "", &[2.0, 1.0, 1.0, 1.0])
        .mutual(1, 2, N)
        .mutual(1, 3, N)
        .mutual(1, 4, N)
        .tags(&tags);
    out.push(
        rivals
            .renamed("divide-and-rule/united", "agents 2 to 4 are allied against agent 1")
            .mutual(2, 3, P)
            .mutual(2, 4, P)
            .mutual(3, 4, P)
            .done(),
    );
    out.push(
        rivals
            .renamed("divide-and-rule/divided", "agents 2 to 4 oppose agent 1 and fight each other")
            .mutual(2, 3, N)
            .mutual(2, 4, N)
            .mutual(3, 4, N)
            .done(),
    );
    let t1 = scenario("divide-and-rule/t1", "agents 2 and 3 are allied; agent 1 is larger and outside", &[2.0, 1.0, 1.0])
        .mutual(2, 3, P)
        .tags(&tags);
    out.push(t1.clone().done());
    let t2 = t1
        .renamed("divide-and-rule/t2", "agent 1 courts agent 2 and attacks agent 3")
        .to(1, 2, P)
        .to(1, 3, N);
    out.push(t2.clone().done());
    out.push(
        t2.renamed("divide-and-rule/t3", "agent 2 stays with agent 3 and is attacked by agent 1")
            .to(1, 2, N)
            .done(),
    );
    out.push(
        t2.renamed("divide-and-rule/t4", "agent 2 leaves agent 3 and allies with agent 1")
            .to(2, 1, P)
            .drop(2, 3)
            .done(),
    );

    let tags = ["bipolar", "latent-tension"];
    for (name, a, what) in [("unequal", 2.4, "pole 1 slightly larger than pole 4"), ("equal", 2.0, "poles of equal size")] {
        for (suffix, rel, how) in [("", None, "at peace"), ("-fight", Some(N), "fighting"), ("-cooperate", Some(P), "cooperating")] {
            let id = format!("latent-tension/{name}{suffix}");
            let description = format!("{what}, {how}");
            out.push(bipolar_build(a, 2.0, rel).renamed(&id, &description).tags(&tags).done());
        }
    }

    let tags = ["bipolar", "conquest"];
    let t1 = bipolar_build(2.4, 2.0, None)
        .renamed("conquest/t1", "bipolar pair with latent tension between poles 1 and 4")
        .tags(&tags);
    out.push(t1.clone().done());
    let war = t1.renamed("conquest/t2", "poles 1 and 4 fight; agent 2 joins agent 1").mutual(1, 4, N).to(2, 4, N);
    out.push(war.clone().done());
    out.push(
        war.renamed("conquest/t3", "agent 4 is worn down")
            .sizes(&[2.2, 0.9, 1.0, 1.2, 0.9, 0.9])
            .done(),
    );
    let beaten = war.renamed("conquest/t4", "agent 4 is much reduced").sizes(&[2.0, 0.8, 1.0, 0.6, 0.8, 0.8]);
    out.push(beaten.clone().done());
    out.push(
        beaten
            .renamed("conquest/t5", "agent 4 and its tributaries submit to agent 1")
            .cut(2, 4)
            .cut(4, 5)
            .cut(4, 6)
            .mutual(1, 4, P)
            .star(1, &[5, 6])
            .done(),
    );

    let tags = ["bipolar", "balancing"];
    let base = scenario("balancing/baseline", "agent 2 leads agents 1 and 3; agent 6 leads 5 and 8; agents 4 and 7 are free", &[1.0, 3.0, 1.0, 1.5, 1.0, 3.5, 1.0, 1.0])
        .star(2, &[1, 3])
        .star(6, &[5, 8])
        .tags(&tags);
    out.push(base.clone().done());
    out.push(base.renamed("balancing/aggression", "agent 2 fights its rival agent 6").mutual(2, 6, N).done());
    out.push(base.renamed("balancing/alliance", "agent 2 allies with agent 4").mutual(2, 4, P).done());
    out.push(base.renamed("balancing/bandwagon", "agent 2 cooperates with agent 6").mutual(2, 6, P).done());
    out.push(
        base.renamed("balancing/buck-passing", "agent 2 pays agent 7 to fight agent 6")
            .to(2, 7, P)
            .mutual(7, 6, N)
            .done(),
    );

    let tags = ["bipolar", "chain-ganging"];
    let t1 = scenario("chain-ganging/t1", "two hegemons with two tributaries each, at peace", &[3.0, 1.0, 1.0, 3.0, 1.0, 1.0])
        .star(1, &[2, 3])
        .star(4, &[5, 6])
        .tags(&tags);
    out.push(t1.clone().done());
    let t2 = t1.renamed("chain-ganging/t2", "tributaries 3 and 5 fight").mutual(3, 5, N);
    out.push(t2.clone().done());
    out.push(
        t2.renamed("chain-ganging/t3a", "both hegemons stop supporting their fighting tributaries")
            .drop(1, 3)
            .drop(4, 5)
            .done(),
    );
    let t3b = t2.renamed("chain-ganging/t3b", "agent 1 defends agent 3 by attacking agent 5").to(1, 5, N);
    out.push(t3b.clone().done());
    out.push(t3b.renamed("chain-ganging/t4", "agents 1 and 4 fight directly").mutual(1, 4, N).done());

    let dominant = 3.0;
    for (variant, f) in [
        ("unity-presence", unity_presence as fn(f64, bool) -> ScenarioDoc),
        ("unity-aggression", unity_aggression),
    ] {
        for (label, d, united) in [("a", 1.0, false), ("b", 1.0, true), ("c", dominant, false), ("d", dominant, true)] {
            let mut doc = f(d, united);
            doc.id = format!("{variant}/{label}");
            doc.description = format!(
                "agents 1 and 2 {} with agent 4 of size {d}",
                if united { "united" } else { "apart" }
            );
            doc.tags = vec!["bipolar".into(), variant.into()];
            out.push(doc);
        }
    }

    let tags = ["vacuum"];
    out.push(scenario("vacuum/empty", "six equal agents, no relations", &[1.0; 6]).tags(&tags).done());
    let pockets = scenario("vacuum/pockets", "near-equal agents with one alliance and one feud", &[1.0, 1.1, 0.9, 1.0, 1.05, 0.95])
        .mutual(1, 2, P)
        .mutual(4, 5, N)
        .tags(&tags);
    out.push(pockets.clone().done());
    out.push(
        pockets
            .renamed("vacuum/diffuse", "near-equal agents with scattered one-way and mutual relations")
            .mutual(2, 3, P)
            .mutual(3, 6, N)
            .to(1, 5, P)
            .to(6, 4, P)
            .done(),
    );
    out
}

/// Every builtin scenario, in a fixed order.
pub fn corpus() -> &'static [ScenarioDoc] {
    static CORPUS: OnceLock<Vec<ScenarioDoc>> = OnceLock::new();
    CORPUS.get_or_init(build_corpus)
}

pub fn corpus_get(id: &str) -> Result<ScenarioDoc, ScenarioError> {
    corpus()
        .iter()
        .find(|d| d.id == id)
        .cloned()
        .ok_or_else(|| ScenarioError::UnknownScenario(id.to_owned()))
}
