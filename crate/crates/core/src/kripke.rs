//! Finite Kripke models and intuitionistic forcing: the semantics under which
//! an outcome proposition has no truth value before the measurement, acquires
//! a classical one at the maximal worlds, and in between supports Heyting
//! negation and the possibility/necessity operators along the same order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{Proposition, TruthValue3};
use crate::quantum::SampleSpace;

/// Validated finite model: a partial order of worlds with a least element and
/// monotone atomic forcing.
#[derive(Debug, Clone)]
pub struct KripkeModel {
    worlds: Vec<String>,
    index: BTreeMap<String, usize>,
    root: usize,
    /// reflexive-transitive closure of the declared order
    leq: Vec<Vec<bool>>,
    /// successors of each world, itself included
    up: Vec<Vec<usize>>,
    forcing: Vec<BTreeSet<String>>,
    atoms: BTreeSet<String>,
    undecided: BTreeSet<String>,
}

impl KripkeModel {
    /// Builds and validates a model. `order` lists (lower, upper) pairs whose
    /// reflexive-transitive closure becomes the accessibility order; the
    /// closure must be antisymmetric, must place `root` below every world,
    /// and forcing must grow monotonically along it.
    pub fn new(
        worlds: Vec<String>,
        root: &str,
        order: Vec<(String, String)>,
        forcing: BTreeMap<String, BTreeSet<String>>,
        atoms: BTreeSet<String>,
        undecided_atoms: BTreeSet<String>,
    ) -> Result<Self> {
        if worlds.is_empty() {
            return Err(Error::InvalidFrame("a model needs at least one world".into()));
        }
        let mut index = BTreeMap::new();
        for (i, w) in worlds.iter().enumerate() {
            if index.insert(w.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(w.clone()));
            }
        }
        let lookup = |name: &str| -> Result<usize> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownWorld(name.to_string()))
        };
        let root_idx = lookup(root)?;

        let n = worlds.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (lo, hi) in &order {
            leq[lookup(lo)?][lookup(hi)?] = true;
        }
        // Floyd-Warshall closure; models stay small
        for k in 0..n {
            let through_k = leq[k].clone();
            for row in leq.iter_mut() {
                if row[k] {
                    for (dst, &reachable) in row.iter_mut().zip(&through_k) {
                        *dst = *dst || reachable;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidFrame(format!(
                        "order has a cycle through '{}' and '{}'",
                        worlds[j], worlds[i]
                    )));
                }
            }
        }
        if let Some(j) = (0..n).find(|&j| !leq[root_idx][j]) {
            return Err(Error::InvalidFrame(format!(
                "root '{}' does not lie below world '{}'",
                worlds[root_idx], worlds[j]
            )));
        }

        let mut forced = vec![BTreeSet::new(); n];
        for (world, set) in forcing {
            forced[lookup(&world)?] = set;
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] {
                    if let Some(atom) = forced[i].difference(&forced[j]).next() {
                        return Err(Error::NonMonotoneForcing {
                            lower: worlds[i].clone(),
                            upper: worlds[j].clone(),
                            atom: atom.clone(),
                        });
                    }
                }
            }
        }

        let mut all_atoms = atoms;
        all_atoms.extend(undecided_atoms.iter().cloned());
        for set in &forced {
            all_atoms.extend(set.iter().cloned());
        }

        let up = (0..n)
            .map(|i| (0..n).filter(|&j| leq[i][j]).collect())
            .collect();
        Ok(Self {
            worlds,
            index,
            root: root_idx,
            leq,
            up,
            forcing: forced,
            atoms: all_atoms,
            undecided: undecided_atoms,
        })
    }

    /// One root below N leaves; leaf n forces exactly the n-th outcome atom,
    /// the root forces nothing.
    pub fn measurement_frame(space: &SampleSpace) -> KripkeModel {
        let mut worlds = vec!["root".to_string()];
        let mut order = Vec::new();
        let mut forcing = BTreeMap::new();
        for (i, label) in space.labels().iter().enumerate() {
            let leaf = leaf_world_name(i);
            worlds.push(leaf.clone());
            order.push(("root".to_string(), leaf.clone()));
            forcing.insert(leaf, BTreeSet::from([label.clone()]));
        }
        Self::new(
            worlds,
            "root",
            order,
            forcing,
            space.labels().iter().cloned().collect(),
            BTreeSet::new(),
        )
        .expect("measurement frame is valid by construction")
    }

    /// Two worlds: a root and one witness forcing the axiomatically
    /// undecidable atoms — `pi_hc` (the ready-state decision problem has a
    /// positive answer), `m0_exists` (the ready state is an element of the
    /// apparatus space) and `schrodinger_holds` (the composite obeys the
    /// evolution for small times). At the root each is undecided, each
    /// possibility holds, and each negation is false; the pairwise
    /// implications among them hold everywhere.
    pub fn pihc_frame() -> KripkeModel {
        let atoms: BTreeSet<String> = ["pi_hc", "m0_exists", "schrodinger_holds"]
            .map(String::from)
            .into();
        Self::new(
            vec!["root".to_string(), "witness".to_string()],
            "root",
            vec![("root".to_string(), "witness".to_string())],
            BTreeMap::from([("witness".to_string(), atoms.clone())]),
            atoms.clone(),
            atoms,
        )
        .expect("two-world witness frame is valid by construction")
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn root_name(&self) -> &str {
        &self.worlds[self.root]
    }

    pub fn atoms(&self) -> &BTreeSet<String> {
        &self.atoms
    }

    pub fn undecided_atoms(&self) -> &BTreeSet<String> {
        &self.undecided
    }

    fn world_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn forcing_at(&self, world: &str) -> Result<&BTreeSet<String>> {
        Ok(&self.forcing[self.world_index(world)?])
    }

    /// Whether `lower` can reach `upper` through the closed order.
    pub fn le(&self, lower: &str, upper: &str) -> Result<bool> {
        Ok(self.leq[self.world_index(lower)?][self.world_index(upper)?])
    }

    pub fn is_maximal(&self, world: &str) -> Result<bool> {
        Ok(self.up[self.world_index(world)?].len() == 1)
    }

    pub fn maximal_worlds(&self) -> Vec<&str> {
        (0..self.worlds.len())
            .filter(|&i| self.up[i].len() == 1)
            .map(|i| self.worlds[i].as_str())
            .collect()
    }

    /// Parses a formula and checks every atom against the declared set.
    pub fn parse(&self, text: &str) -> Result<Proposition> {
        let p = crate::logic::parse(text)?;
        self.check_atoms(&p)?;
        Ok(p)
    }

    pub fn check_atoms(&self, p: &Proposition) -> Result<()> {
        for label in p.atoms() {
            if !self.atoms.contains(&label) {
                return Err(Error::UnknownAtom(label));
            }
        }
        Ok(())
    }

    /// w such that every successor (w itself included) is in `set`.
    fn up_all(&self, set: &[bool]) -> Vec<bool> {
        self.up
            .iter()
            .map(|succ| succ.iter().all(|&j| set[j]))
            .collect()
    }

    /// w such that some successor is in `set`.
    fn up_some(&self, set: &[bool]) -> Vec<bool> {
        self.up
            .iter()
            .map(|succ| succ.iter().any(|&j| set[j]))
            .collect()
    }

    /// The set of worlds forcing `p`, computed bottom-up per subformula.
    /// Monotone along the order whenever the model validated, since every
    /// clause below preserves upward closure.
    fn force_set(&self, p: &Proposition) -> Result<Vec<bool>> {
        use Proposition::*;
        Ok(match p {
            Atom(label) | UndecidedAtom(label) => {
                if !self.atoms.contains(label) {
                    return Err(Error::UnknownAtom(label.clone()));
                }
                self.forcing.iter().map(|f| f.contains(label)).collect()
            }
            Not(q) => {
                // no successor forces q
                let q = self.force_set(q)?;
                self.up_some(&q).iter().map(|&b| !b).collect()
            }
            And(a, b) => {
                let (a, b) = (self.force_set(a)?, self.force_set(b)?);
                a.iter().zip(&b).map(|(&x, &y)| x && y).collect()
            }
            Or(a, b) => {
                let (a, b) = (self.force_set(a)?, self.force_set(b)?);
                a.iter().zip(&b).map(|(&x, &y)| x || y).collect()
            }
            Xor(a, b) => {
                // (a | b) & (~a | ~b), evaluated on the forcing sets
                let (a, b) = (self.force_set(a)?, self.force_set(b)?);
                let not_a = self.up_some(&a);
                let not_b = self.up_some(&b);
                (0..a.len())
                    .map(|w| (a[w] || b[w]) && (!not_a[w] || !not_b[w]))
                    .collect()
            }
            Implies(a, b) => {
                // every successor forcing a also forces b
                let (a, b) = (self.force_set(a)?, self.force_set(b)?);
                self.up
                    .iter()
                    .map(|succ| succ.iter().all(|&j| !a[j] || b[j]))
                    .collect()
            }
            Possibly(q) => self.up_some(&self.force_set(q)?),
            Necessarily(q) => self.up_all(&self.force_set(q)?),
        })
    }

    pub fn forces(&self, world: &str, p: &Proposition) -> Result<bool> {
        let w = self.world_index(world)?;
        Ok(self.force_set(p)?[w])
    }

    /// Three-valued verdict at a world: `True` if forced there, `False` if
    /// its negation is forced there, `Undecided` otherwise.
    pub fn eval3_at(&self, world: &str, p: &Proposition) -> Result<TruthValue3> {
        let w = self.world_index(world)?;
        self.eval3_idx(w, p)
    }

    /// Verdict at the root — the situation in advance of the measurement.
    pub fn eval3(&self, p: &Proposition) -> Result<TruthValue3> {
        self.eval3_idx(self.root, p)
    }

    fn eval3_idx(&self, w: usize, p: &Proposition) -> Result<TruthValue3> {
        let set = self.force_set(p)?;
        if set[w] {
            return Ok(TruthValue3::True);
        }
        if self.up[w].iter().all(|&j| !set[j]) {
            return Ok(TruthValue3::False);
        }
        Ok(TruthValue3::Undecided)
    }

    /// Total classical assignment read off a maximal world: an atom is true
    /// exactly when forced there. At such worlds forcing and classical
    /// evaluation coincide and excluded middle holds.
    pub fn post_valuation(&self, world: &str) -> Result<BTreeMap<String, bool>> {
        let w = self.world_index(world)?;
        if self.up[w].len() != 1 {
            return Err(Error::NotMaximalWorld(world.to_string()));
        }
        Ok(self
            .atoms
            .iter()
            .map(|a| (a.clone(), self.forcing[w].contains(a)))
            .collect())
    }

    /// Necessity implies possibility and truth at every world — the two modal
    /// axioms the accessibility order earns by being reflexive (hence serial).
    pub fn modal_axioms_hold(&self, p: &Proposition) -> Result<bool> {
        let set = self.force_set(p)?;
        let boxed = self.up_all(&set);
        let maybe = self.up_some(&set);
        Ok((0..self.worlds.len()).all(|w| (!boxed[w] || maybe[w]) && (!boxed[w] || set[w])))
    }
}

/// World name of the 0-based outcome `i` in a measurement frame.
pub fn leaf_world_name(i: usize) -> String {
    format!("leaf{}", i + 1)
}

/// Flat serialized form of a model: worlds, root, (lower, upper) order pairs,
/// per-world forced atoms, and optional extra / undecided atom declarations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameSpec {
    pub worlds: Vec<String>,
    pub root: String,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    #[serde(default)]
    pub forcing: BTreeMap<String, BTreeSet<String>>,
    #[serde(default)]
    pub atoms: BTreeSet<String>,
    #[serde(default)]
    pub undecided_atoms: BTreeSet<String>,
}

impl FrameSpec {
    pub fn from_json(text: &str) -> Result<FrameSpec> {
        serde_json::from_str(text).map_err(|e| Error::InvalidFrame(e.to_string()))
    }

    pub fn build(&self) -> Result<KripkeModel> {
        KripkeModel::new(
            self.worlds.clone(),
            &self.root,
            self.order.clone(),
            self.forcing.clone(),
            self.atoms.clone(),
            self.undecided_atoms.clone(),
        )
    }
}
