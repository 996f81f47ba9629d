//! Versioned JSON, CSV and DOT renderings of search results, class tables,
//! interaction graphs and trajectories.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::classes::{classify_mode, ClassId};
use crate::dispersion::{DispersionLaw, WaveVector};
use crate::dynamics::{BveTriad, Trajectory};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::search::{
    certificate_equations, Certificate, ClassGroup, ClassPartition, Conservation, InteractionGraph, ResonanceCondition,
    ResonantSet, SearchDomain, Signs, SolutionSet, Tags,
};

pub const SCHEMA_VERSION: u32 = 1;

/// A float written with 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F17(pub f64);

pub fn format_f17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.16e}")
}

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let n: serde_json::Number = format_f17(self.0).parse().map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for F17 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<F17, D::Error> {
        Ok(F17(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

fn pair(k: WaveVector) -> [i32; 2] {
    [k.m, k.n]
}

fn unpair(p: [i32; 2]) -> WaveVector {
    WaveVector::new(p[0], p[1])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionExport {
    pub arity: usize,
    pub signs: Vec<i8>,
    pub conservation: Conservation,
}

impl ConditionExport {
    pub fn to_condition(&self) -> Result<ResonanceCondition> {
        let signs = Signs::new(&self.signs)?;
        if signs.arity() != self.arity {
            return Err(Error::Config("arity does not match the sign list".into()));
        }
        Ok(ResonanceCondition::new(signs, self.conservation))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermExport {
    pub mode: [i32; 2],
    pub sign: i8,
    pub gamma: u64,
    /// Rational multiplier of the class radical.
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEquationExport {
    pub kernel: u64,
    pub degree: u32,
    pub positions: Vec<usize>,
    pub terms: Vec<TermExport>,
    pub residue: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CertificateExport {
    RationalIdentity { terms: Vec<TermExport>, residue: Rational },
    PerClassIdentity { classes: Vec<ClassEquationExport> },
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionExport {
    pub modes: Vec<[i32; 2]>,
    pub signs: Vec<i8>,
    pub certificate: CertificateExport,
    pub tags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchExport {
    pub schema_version: u32,
    pub law: DispersionLaw,
    pub condition: ConditionExport,
    pub domain: SearchDomain,
    pub count: usize,
    pub solutions: Vec<SolutionExport>,
}

fn certificate_export(law: &DispersionLaw, set: &ResonantSet) -> Result<CertificateExport> {
    let equations = match set.certificate() {
        Certificate::Uncertified => return Ok(CertificateExport::Uncertified),
        _ => certificate_equations(law, set)?,
    };
    let modes = set.modes();
    let signs = set.signs();
    let mut used = [false; 4];
    let mut classes = Vec::with_capacity(equations.len());
    for eq in &equations {
        let mut positions = Vec::new();
        let mut terms = Vec::new();
        for t in &eq.terms {
            let m = t
                .membership
                .ok_or_else(|| Error::Inconsistency("equation term without a mode".into()))?;
            let sign = t.coefficient.signum() as i8;
            let pos = (0..modes.len())
                .find(|&i| modes[i] == m.mode && signs.sign(i) == sign && !used[i])
                .ok_or_else(|| Error::Inconsistency(format!("mode {} is not part of the solution", m.mode)))?;
            used[pos] = true;
            positions.push(pos);
            terms.push(TermExport {
                mode: pair(m.mode),
                sign,
                gamma: m.gamma,
                value: t.value,
            });
        }
        classes.push(ClassEquationExport {
            kernel: eq.class_id.kernel,
            degree: eq.class_id.degree,
            positions,
            terms,
            residue: eq.residue()?,
        });
    }
    Ok(match set.certificate() {
        Certificate::RationalIdentity => {
            let eq = classes
                .pop()
                .ok_or_else(|| Error::Inconsistency("empty rational certificate".into()))?;
            CertificateExport::RationalIdentity {
                terms: eq.terms,
                residue: eq.residue,
            }
        }
        _ => CertificateExport::PerClassIdentity { classes },
    })
}

fn solution_export(law: &DispersionLaw, s: &ResonantSet) -> Result<SolutionExport> {
    Ok(SolutionExport {
        modes: s.modes().iter().map(|&k| pair(k)).collect(),
        signs: s.signs().to_vec(),
        certificate: certificate_export(law, s)?,
        tags: s.tags().names().into_iter().map(String::from).collect(),
    })
}

fn condition_export(condition: &ResonanceCondition) -> ConditionExport {
    ConditionExport {
        arity: condition.arity(),
        signs: condition.signs.to_vec(),
        conservation: condition.conservation,
    }
}

/// Borrowed form of [`SearchExport`] that expands solutions while writing.
#[derive(Serialize)]
struct SearchView<'a> {
    schema_version: u32,
    law: &'a DispersionLaw,
    condition: ConditionExport,
    domain: &'a SearchDomain,
    count: usize,
    solutions: SolutionsView<'a>,
}

struct SolutionsView<'a> {
    law: &'a DispersionLaw,
    sets: &'a SolutionSet,
}

impl Serialize for SolutionsView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.sets.len()))?;
        for set in self.sets.iter() {
            seq.serialize_element(&solution_export(self.law, set).map_err(serde::ser::Error::custom)?)?;
        }
        seq.end()
    }
}

/// Writes the JSON search export without holding it in memory. The bytes
/// equal [`SearchExport::to_json`] of the same results.
pub fn write_search_json<W: Write>(
    mut w: W,
    law: &DispersionLaw,
    condition: &ResonanceCondition,
    domain: &SearchDomain,
    sets: &SolutionSet,
) -> Result<()> {
    let view = SearchView {
        schema_version: SCHEMA_VERSION,
        law,
        condition: condition_export(condition),
        domain,
        count: sets.len(),
        solutions: SolutionsView { law, sets },
    };
    serde_json::to_writer(&mut w, &view)?;
    w.write_all(b"\n")?;
    Ok(())
}

/// CSV rows of a search, one per solution.
pub fn write_search_csv<W: Write>(w: W, law: &DispersionLaw, sets: &SolutionSet) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(CSV_HEADER)?;
    for s in sets.iter() {
        w.write_record(csv_row(&solution_export(law, s)?))?;
    }
    w.flush()?;
    Ok(())
}

const CSV_HEADER: [&str; 12] = [
    "m1",
    "n1",
    "m2",
    "n2",
    "m3",
    "n3",
    "m4",
    "n4",
    "signs",
    "certificate",
    "classes",
    "tags",
];

fn csv_row(s: &SolutionExport) -> Vec<String> {
    let mut row: Vec<String> = Vec::with_capacity(12);
    for i in 0..4 {
        match s.modes.get(i) {
            Some(p) => {
                row.push(p[0].to_string());
                row.push(p[1].to_string());
            }
            None => {
                row.push(String::new());
                row.push(String::new());
            }
        }
    }
    row.push(s.signs.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect());
    let (kind, classes) = match &s.certificate {
        CertificateExport::RationalIdentity { .. } => ("rational-identity", String::new()),
        CertificateExport::Uncertified => ("uncertified", String::new()),
        CertificateExport::PerClassIdentity { classes } => (
            "per-class-identity",
            classes
                .iter()
                .map(|c| {
                    let pos: Vec<String> = c.positions.iter().map(|p| (p + 1).to_string()).collect();
                    format!("{}:{}", c.kernel, pos.join("+"))
                })
                .collect::<Vec<_>>()
                .join(" "),
        ),
    };
    row.push(kind.into());
    row.push(classes);
    row.push(s.tags.join(" "));
    row
}

impl SearchExport {
    pub fn new(
        law: &DispersionLaw,
        condition: &ResonanceCondition,
        domain: &SearchDomain,
        sets: &SolutionSet,
    ) -> Result<SearchExport> {
        let solutions = sets
            .iter()
            .map(|s| solution_export(law, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(SearchExport {
            schema_version: SCHEMA_VERSION,
            law: *law,
            condition: condition_export(condition),
            domain: *domain,
            count: solutions.len(),
            solutions,
        })
    }

    pub fn parse(text: &str) -> Result<SearchExport> {
        let e: SearchExport = serde_json::from_str(text)?;
        if e.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema version {}",
                e.schema_version
            )));
        }
        if e.count != e.solutions.len() {
            return Err(Error::Config("solution count does not match the list".into()));
        }
        Ok(e)
    }

    /// Rebuilds the in-memory solutions.
    pub fn to_solutions(&self) -> Result<SolutionSet> {
        let sets = self
            .solutions
            .iter()
            .map(|s| {
                let modes: Vec<WaveVector> = s.modes.iter().map(|&p| unpair(p)).collect();
                let signs = Signs::new(&s.signs)?;
                let tags = Tags::from_names(s.tags.iter().map(String::as_str))?;
                let certificate = match &s.certificate {
                    CertificateExport::Uncertified => Certificate::Uncertified,
                    CertificateExport::RationalIdentity { .. } => Certificate::RationalIdentity,
                    CertificateExport::PerClassIdentity { classes } => {
                        let groups: Vec<ClassGroup> = classes
                            .iter()
                            .map(|c| ClassGroup {
                                class_id: ClassId {
                                    kernel: c.kernel,
                                    degree: c.degree,
                                },
                                positions: c.positions.iter().fold(0u8, |acc, &p| acc | (1u8 << (p.min(7)))),
                            })
                            .collect();
                        Certificate::PerClassIdentity(ClassPartition::new(&groups)?)
                    }
                };
                ResonantSet::from_parts(&modes, signs, tags, certificate)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SolutionSet::from_vec(sets))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)? + "\n")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        for s in &self.solutions {
            w.write_record(csv_row(s))?;
        }
        finish_csv(w)
    }
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(std::io::Error::other(e)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassMemberExport {
    pub mode: [i32; 2],
    pub gamma: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassExport {
    pub kernel: u64,
    pub degree: u32,
    pub members: Vec<ClassMemberExport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassTable {
    pub schema_version: u32,
    pub law: DispersionLaw,
    pub domain: SearchDomain,
    pub classes: Vec<ClassExport>,
}

impl ClassTable {
    /// Classes of all domain modes, ordered by kernel, members by mode.
    pub fn build(law: &DispersionLaw, domain: &SearchDomain) -> Result<ClassTable> {
        law.require_exact()?;
        let mut by: BTreeMap<ClassId, Vec<ClassMemberExport>> = BTreeMap::new();
        for k in domain.modes(law) {
            let c = classify_mode(law, k)?;
            by.entry(c.class_id).or_default().push(ClassMemberExport {
                mode: pair(k),
                gamma: c.gamma,
            });
        }
        let classes = by
            .into_iter()
            .map(|(id, members)| ClassExport {
                kernel: id.kernel,
                degree: id.degree,
                members,
            })
            .collect();
        Ok(ClassTable {
            schema_version: SCHEMA_VERSION,
            law: *law,
            domain: *domain,
            classes,
        })
    }

    pub fn class(&self, kernel: u64) -> Option<&ClassExport> {
        self.classes.iter().find(|c| c.kernel == kernel)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["kernel", "degree", "m", "n", "gamma"])?;
        for c in &self.classes {
            for m in &c.members {
                w.write_record([
                    c.kernel.to_string(),
                    c.degree.to_string(),
                    m.mode[0].to_string(),
                    m.mode[1].to_string(),
                    m.gamma.to_string(),
                ])?;
            }
        }
        finish_csv(w)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeExport {
    pub a: [i32; 2],
    pub b: [i32; 2],
    pub sets: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphExport {
    pub schema_version: u32,
    pub nodes: Vec<[i32; 2]>,
    pub edges: Vec<EdgeExport>,
    pub clusters: Vec<Vec<[i32; 2]>>,
    /// Domain modes in no solution.
    pub nonresonant: Vec<[i32; 2]>,
}

impl GraphExport {
    pub fn new(graph: &InteractionGraph) -> GraphExport {
        GraphExport {
            schema_version: SCHEMA_VERSION,
            nodes: graph.nodes.iter().map(|&k| pair(k)).collect(),
            edges: graph
                .edges
                .iter()
                .map(|e| EdgeExport {
                    a: pair(e.a),
                    b: pair(e.b),
                    sets: e.sets.clone(),
                })
                .collect(),
            clusters: graph
                .clusters
                .iter()
                .map(|c| c.iter().map(|&k| pair(k)).collect())
                .collect(),
            nonresonant: graph.isolated().into_iter().map(pair).collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Undirected DOT graph; edge labels list the solution indices.
pub fn graph_to_dot(graph: &InteractionGraph) -> String {
    let mut out = String::from("graph resonances {\n  node [shape=point];\n");
    let name = |k: WaveVector| format!("\"({},{})\"", k.m, k.n);
    for (i, cluster) in graph.clusters.iter().enumerate() {
        if cluster.len() == 1 {
            let _ = writeln!(out, "  {} [cluster={i}, isolated=true];", name(cluster[0]));
        } else {
            for &k in cluster {
                let _ = writeln!(out, "  {} [cluster={i}];", name(k));
            }
        }
    }
    for e in &graph.edges {
        let sets: Vec<String> = e.sets.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", name(e.a), name(e.b), sets.join(","));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriadExport {
    pub modes: Vec<[i32; 2]>,
    pub n: [u64; 3],
    pub z: F17,
    pub convergence: Vec<(usize, F17)>,
    pub alphas: Vec<[F17; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleExport {
    pub t: F17,
    pub a: [[F17; 2]; 3],
    pub energy: [F17; 3],
    pub invariants: Option<[F17; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryExport {
    pub schema_version: u32,
    pub triad: Option<TriadExport>,
    pub step: F17,
    pub horizon: F17,
    pub max_relative_drift: [F17; 2],
    pub samples: Vec<SampleExport>,
}

impl TrajectoryExport {
    pub fn new(triad: Option<&BveTriad>, traj: &Trajectory, step: f64, horizon: f64) -> Result<TrajectoryExport> {
        let triad = match triad {
            Some(t) => {
                let sys = t.system()?;
                Some(TriadExport {
                    modes: t.modes.iter().map(|&k| pair(k)).collect(),
                    n: t.n,
                    z: F17(t.z),
                    convergence: t.convergence.iter().map(|&(q, z)| (q, F17(z))).collect(),
                    alphas: sys.alphas.iter().map(|a| [F17(a.re), F17(a.im)]).collect(),
                })
            }
            None => None,
        };
        let samples = traj
            .samples
            .iter()
            .enumerate()
            .map(|(i, s)| SampleExport {
                t: F17(s.t),
                a: s.a.map(|z| [F17(z.re), F17(z.im)]),
                energy: s.energies().map(F17),
                invariants: traj.invariants.get(i).map(|&(a, b)| [F17(a), F17(b)]),
            })
            .collect();
        let (d1, d2) = traj.max_relative_drift();
        Ok(TrajectoryExport {
            schema_version: SCHEMA_VERSION,
            triad,
            step: F17(step),
            horizon: F17(horizon),
            max_relative_drift: [F17(d1), F17(d2)],
            samples,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "T", "re_A1", "im_A1", "re_A2", "im_A2", "re_A3", "im_A3", "abs2_A1", "abs2_A2", "abs2_A3", "I1", "I2",
        ])?;
        for s in &self.samples {
            let mut row = vec![format_f17(s.t.0)];
            for z in &s.a {
                row.push(format_f17(z[0].0));
                row.push(format_f17(z[1].0));
            }
            row.extend(s.energy.iter().map(|e| format_f17(e.0)));
            match s.invariants {
                Some([a, b]) => {
                    row.push(format_f17(a.0));
                    row.push(format_f17(b.0));
                }
                None => {
                    row.push(String::new());
                    row.push(String::new());
                }
            }
            w.write_record(&row)?;
        }
        finish_csv(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f17(0.1), "1.0000000000000001e-1");
        assert_eq!(format_f17(0.0), "0");
        let v: F17 = serde_json::from_str(&serde_json::to_string(&F17(1.0 / 3.0)).unwrap()).unwrap();
        assert_eq!(v.0, 1.0 / 3.0);
        assert_eq!(serde_json::to_string(&F17(f64::NAN)).unwrap(), "null");
    }
}
