//! Command-line front end: argument parsing, the reports each subcommand
//! produces, and their json / csv / plain renderings.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    limiting_volume, normalized_leading, product_ehrhart, tesler_volume, tesler_volume_catalan_form,
};
use crate::ct_identity::{ct_lhs_lidskii, ct_lhs_series, default_truncation};
use crate::error::{Error, Result};
use crate::exact_math::{binomial, format_rat, ExactInt, ExactPolynomial};
use crate::face_lattice::{
    all_face_descriptors, f_vector, f_vector_from_poset, h_from_f, h_polynomial,
};
use crate::flow_core::enumerate_vertices;
use crate::kostant::{ehrhart_polynomial, lattice_points};
use crate::lidskii::{lidskii_points, lidskii_volume};
use crate::partition_graph::{build_graph, NetflowVector, Partition};

pub const SCHEMA: &str = "flowpoly/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

/// `ones`, or comma-separated positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NetflowSpec {
    Ones,
    List(Vec<u64>),
}

impl FromStr for NetflowSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "ones" {
            return Ok(NetflowSpec::Ones);
        }
        Ok(NetflowSpec::List(
            s.parse::<NetflowVector>()?.entries().to_vec(),
        ))
    }
}

impl NetflowSpec {
    /// The netflow for a graph on `n + 1` vertices, plus a warning when
    /// trailing entries were dropped.
    pub fn resolve(&self, n: usize) -> Result<(NetflowVector, Option<String>)> {
        match self {
            NetflowSpec::Ones => Ok((NetflowVector::ones(n), None)),
            NetflowSpec::List(v) if v.len() < n => Err(Error::InvalidNetflow(format!(
                "{} entries given but n = {n} needs {n}",
                v.len()
            ))),
            NetflowSpec::List(v) => {
                let warning = (v.len() > n).then(|| {
                    format!(
                        "netflow has {} entries; using the first {n} and ignoring the rest",
                        v.len()
                    )
                });
                Ok((NetflowVector::new(v[..n].to_vec())?, warning))
            }
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "flowpoly",
    version,
    about = "Volumes, lattice points and faces of flow polytopes of Young diagram graphs"
)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: OutputFormat,

    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, env = "FLOWPOLY_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Instance {
    /// Parts in weakly decreasing order, e.g. 4,3,2,1.
    #[arg(long)]
    pub partition: Partition,

    #[arg(long)]
    pub n: usize,

    /// `ones` or a comma-separated list of positive integers.
    #[arg(long, default_value = "ones")]
    pub netflow: NetflowSpec,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Edges of G(λ, n).
    Graph {
        #[arg(long)]
        partition: Partition,
        #[arg(long)]
        n: usize,
    },
    /// Vertices of the flow polytope.
    Vertices {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        count_only: bool,
    },
    /// Normalized volume by the Lidskii formula and, from the stabilization index on, the product formula.
    Volume {
        #[command(flatten)]
        instance: Instance,
    },
    /// Number of lattice points.
    Points {
        #[command(flatten)]
        instance: Instance,
    },
    /// Ehrhart polynomial.
    Ehrhart {
        #[command(flatten)]
        instance: Instance,
    },
    /// f-vector from the poset of regular subgraphs.
    Faces {
        #[command(flatten)]
        instance: Instance,
        /// Also list every face as a box bitmask.
        #[arg(long)]
        list: bool,
    },
    /// h-polynomial of the product of simplices.
    Hpoly {
        #[arg(long)]
        partition: Partition,
    },
    /// Constant-term identity.
    Ct {
        #[command(flatten)]
        instance: Instance,
        /// Truncation bound for the geometric expansions.
        #[arg(long)]
        truncation: Option<u32>,
    },
    /// Volume of the Tesler polytope.
    Tesler {
        #[arg(long)]
        n: u64,
        /// Skip the Lidskii evaluation on the complete graph.
        #[arg(long)]
        no_lidskii: bool,
    },
    /// Volumes over a range of n.
    Table {
        #[arg(long)]
        partition: Partition,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value = "ones")]
        netflow: NetflowSpec,
    },
}

fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

fn strs<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn poly_strs(p: &ExactPolynomial) -> Vec<String> {
    p.coeffs().iter().map(format_rat).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub schema: String,
    pub partition: String,
    pub n: String,
    pub stabilization_index: String,
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerticesReport {
    pub schema: String,
    pub partition: String,
    pub n: String,
    pub netflow: Vec<String>,
    pub count: String,
    pub expected: String,
    pub agree: bool,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeReport {
    pub schema: String,
    pub partition: String,
    pub n: String,
    pub netflow: Vec<String>,
    pub lidskii: String,
    pub closed_form: Option<String>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsReport {
    pub schema: String,
    pub partition: String,
    pub n: String,
    pub netflow: Vec<String>,
    pub lidskii: String,
    pub kostant: String,
    pub closed_form: Option<String>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartReport {
    pub schema: String,
    pub partition: String,
    pub n: String,
    pub netflow: Vec<String>,
    /// Coefficients of `t^0, t^1, …`.
    pub coefficients: Vec<String>,
    pub closed_form: Option<Vec<String>>,
    pub normalized_volume: String,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesReport {
    pub schema: String,
    pub partition: String,
    pub n: String,
    pub netflow: Vec<String>,
    pub f_vector: Vec<String>,
    pub product_f_vector: Vec<String>,
    pub total: String,
    pub agree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HpolyReport {
    pub schema: String,
    pub partition: String,
    pub coefficients: Vec<String>,
    pub from_f_vector: Vec<String>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CtReport {
    pub schema: String,
    pub partition: String,
    pub n: String,
    pub netflow: Vec<String>,
    pub truncation: String,
    pub series: String,
    pub lidskii: String,
    pub closed_form: Option<String>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeslerReport {
    pub schema: String,
    pub n: String,
    pub product_form: String,
    pub catalan_form: String,
    pub lidskii: Option<String>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: String,
    pub volume: String,
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub schema: String,
    pub partition: String,
    pub stabilization_index: String,
    pub limiting_volume: Option<String>,
    pub rows: Vec<TableRow>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Graph(GraphReport),
    Vertices(VerticesReport),
    Volume(VolumeReport),
    Points(PointsReport),
    Ehrhart(EhrhartReport),
    Faces(FacesReport),
    Hpoly(HpolyReport),
    Ct(CtReport),
    Tesler(TeslerReport),
    Table(TableReport),
}

/// What a run produced: the rendered report, warnings for stderr, and a
/// message when two methods disagreed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub warnings: Vec<String>,
    pub mismatch: Option<String>,
}

fn edge_strs(edges: &[(usize, usize)]) -> Vec<[String; 2]> {
    edges.iter().map(|&(i, j)| [s(i), s(j)]).collect()
}

fn mismatch(ok: bool, what: &str) -> Option<String> {
    (!ok).then(|| format!("{what} disagree"))
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    let mut warnings = Vec::new();
    let mut resolve = |inst: &Instance| -> Result<NetflowVector> {
        inst.partition.check_admissible(inst.n)?;
        let (a, warning) = inst.netflow.resolve(inst.n)?;
        warnings.extend(warning);
        Ok(a)
    };

    let (report, bad) = match &config.command {
        Command::Graph { partition, n } => {
            let g = build_graph(partition, *n)?;
            let r = GraphReport {
                schema: SCHEMA.into(),
                partition: s(partition),
                n: s(n),
                stabilization_index: s(partition.stabilization_index()),
                edges: edge_strs(g.edges()),
            };
            (Report::Graph(r), None)
        }
        Command::Vertices {
            instance,
            count_only,
        } => {
            let a = resolve(instance)?;
            let g = build_graph(&instance.partition, instance.n)?;
            let verts = enumerate_vertices(&g, &a)?;
            let distinct: HashSet<_> = verts.iter().collect();
            let expected: usize = instance.partition.parts().iter().map(|p| p + 1).product();
            let agree = distinct.len() == expected;
            let r = VerticesReport {
                schema: SCHEMA.into(),
                partition: s(&instance.partition),
                n: s(instance.n),
                netflow: strs(a.entries()),
                count: s(distinct.len()),
                expected: s(expected),
                agree,
                edges: edge_strs(g.edges()),
                vertices: (!count_only).then(|| {
                    verts
                        .iter()
                        .map(|f| f.values.iter().map(format_rat).collect())
                        .collect()
                }),
            };
            (
                Report::Vertices(r),
                mismatch(agree, "vertex count and product formula"),
            )
        }
        Command::Volume { instance } => {
            let a = resolve(instance)?;
            let lambda = &instance.partition;
            let g = build_graph(lambda, instance.n)?;
            let lidskii = lidskii_volume(&g, &a)?;
            let closed = match lambda.check_limiting(instance.n) {
                Ok(()) => Some(limiting_volume(lambda, &a)?),
                Err(_) => None,
            };
            let agree = closed.as_ref().map(|c| *c == lidskii);
            let r = VolumeReport {
                schema: SCHEMA.into(),
                partition: s(lambda),
                n: s(instance.n),
                netflow: strs(a.entries()),
                lidskii: s(&lidskii),
                closed_form: closed.map(s),
                agree,
            };
            (
                Report::Volume(r),
                mismatch(agree != Some(false), "Lidskii and product volumes"),
            )
        }
        Command::Points { instance } => {
            let a = resolve(instance)?;
            let lambda = &instance.partition;
            let g = build_graph(lambda, instance.n)?;
            let lidskii = lidskii_points(&g, &a)?;
            let kostant = lattice_points(&g, &a)?;
            let closed = match lambda.check_limiting(instance.n) {
                Ok(()) => Some(
                    lambda
                        .parts()
                        .iter()
                        .enumerate()
                        .fold(BigInt::from(1), |acc, (i, &p)| {
                            acc * binomial(BigInt::from(a.get(i + 1)) + p, p as i64)
                        }),
                ),
                Err(_) => None,
            };
            let agree = lidskii == kostant && closed.as_ref().is_none_or(|c| *c == kostant);
            let r = PointsReport {
                schema: SCHEMA.into(),
                partition: s(lambda),
                n: s(instance.n),
                netflow: strs(a.entries()),
                lidskii: s(&lidskii),
                kostant: s(&kostant),
                closed_form: closed.map(s),
                agree,
            };
            (Report::Points(r), mismatch(agree, "lattice point counts"))
        }
        Command::Ehrhart { instance } => {
            let a = resolve(instance)?;
            let lambda = &instance.partition;
            let g = build_graph(lambda, instance.n)?;
            let p = ehrhart_polynomial(&g, &a)?;
            let closed = match lambda.check_limiting(instance.n) {
                Ok(()) => Some(product_ehrhart(lambda, &a)?),
                Err(_) => None,
            };
            let agree = closed.as_ref().map(|c| *c == p);
            let vol = normalized_leading(&p).ok_or_else(|| {
                Error::InternalConsistency("leading coefficient times d! is not an integer".into())
            })?;
            let r = EhrhartReport {
                schema: SCHEMA.into(),
                partition: s(lambda),
                n: s(instance.n),
                netflow: strs(a.entries()),
                coefficients: poly_strs(&p),
                closed_form: closed.as_ref().map(poly_strs),
                normalized_volume: s(vol),
                agree,
            };
            (
                Report::Ehrhart(r),
                mismatch(agree != Some(false), "Ehrhart polynomials"),
            )
        }
        Command::Faces { instance, list } => {
            let a = resolve(instance)?;
            let lambda = &instance.partition;
            let poset = f_vector_from_poset(lambda, instance.n, &a)?;
            let product = f_vector(lambda);
            let agree = poset == product;
            let total: ExactInt = poset.iter().sum();
            let faces = if *list {
                Some(
                    all_face_descriptors(lambda)?
                        .iter()
                        .map(|c| c.to_hex(lambda))
                        .collect(),
                )
            } else {
                None
            };
            let r = FacesReport {
                schema: SCHEMA.into(),
                partition: s(lambda),
                n: s(instance.n),
                netflow: strs(a.entries()),
                f_vector: strs(&poset),
                product_f_vector: strs(&product),
                total: s(total),
                agree,
                faces,
            };
            (Report::Faces(r), mismatch(agree, "f-vectors"))
        }
        Command::Hpoly { partition } => {
            let h = h_polynomial(partition).integer_coeffs().ok_or_else(|| {
                Error::InternalConsistency("h-polynomial has fractional coefficients".into())
            })?;
            let from_f = h_from_f(&f_vector(partition));
            let agree = h == from_f;
            let r = HpolyReport {
                schema: SCHEMA.into(),
                partition: s(partition),
                coefficients: strs(&h),
                from_f_vector: strs(&from_f),
                agree,
            };
            (
                Report::Hpoly(r),
                mismatch(agree, "h-polynomial and f-vector transform"),
            )
        }
        Command::Ct {
            instance,
            truncation,
        } => {
            let a = resolve(instance)?;
            let lambda = &instance.partition;
            let d = truncation.unwrap_or_else(|| default_truncation(lambda));
            let series = ct_lhs_series(lambda, instance.n, &a, d)?;
            let lidskii = ct_lhs_lidskii(lambda, instance.n, &a)?;
            let closed = match lambda.check_limiting(instance.n) {
                Ok(()) => Some(limiting_volume(lambda, &a)?),
                Err(_) => None,
            };
            let agree = series == lidskii && closed.as_ref().is_none_or(|c| *c == series);
            let r = CtReport {
                schema: SCHEMA.into(),
                partition: s(lambda),
                n: s(instance.n),
                netflow: strs(a.entries()),
                truncation: s(d),
                series: s(&series),
                lidskii: s(&lidskii),
                closed_form: closed.map(s),
                agree,
            };
            (Report::Ct(r), mismatch(agree, "constant term evaluations"))
        }
        Command::Tesler { n, no_lidskii } => {
            let product = tesler_volume(*n)?;
            let catalan = tesler_volume_catalan_form(*n)?;
            let lidskii = if *no_lidskii || *n < 2 {
                None
            } else {
                let stair = Partition::staircase(*n as usize - 1)?;
                let g = build_graph(&stair, *n as usize)?;
                Some(lidskii_volume(&g, &NetflowVector::ones(*n as usize))?)
            };
            let agree = product == catalan && lidskii.as_ref().is_none_or(|l| *l == product);
            let r = TeslerReport {
                schema: SCHEMA.into(),
                n: s(n),
                product_form: s(&product),
                catalan_form: s(&catalan),
                lidskii: lidskii.map(s),
                agree,
            };
            (Report::Tesler(r), mismatch(agree, "Tesler volume formulas"))
        }
        Command::Table {
            partition,
            from,
            to,
            netflow,
        } => {
            if from > to {
                return Err(Error::Parse(format!("empty range {from}..={to}")));
            }
            for n in *from..=*to {
                partition.check_admissible(n)?;
            }
            if let NetflowSpec::List(v) = netflow {
                if v.len() > *to {
                    warnings.push(format!(
                        "netflow has {} entries; only the first {to} are used",
                        v.len()
                    ));
                }
            }
            let star = partition.stabilization_index();
            let mut rows = Vec::new();
            let mut limit = None;
            let mut agree = None;
            for n in *from..=*to {
                let (a, _) = netflow.resolve(n)?;
                let vol = lidskii_volume(&build_graph(partition, n)?, &a)?;
                if n >= star {
                    let closed = limiting_volume(partition, &a)?;
                    agree = Some(agree.unwrap_or(true) && closed == vol);
                    limit.get_or_insert(closed);
                }
                rows.push(TableRow {
                    n: s(n),
                    volume: s(vol),
                    stabilized: n >= star,
                });
            }
            let r = TableReport {
                schema: SCHEMA.into(),
                partition: s(partition),
                stabilization_index: s(star),
                limiting_volume: limit.map(s),
                rows,
                agree,
            };
            (
                Report::Table(r),
                mismatch(agree != Some(false), "Lidskii and product volumes"),
            )
        }
    };
    Ok(Outcome {
        report,
        warnings,
        mismatch: bad,
    })
}

fn csv_field(x: &str) -> String {
    if x.contains([',', '"', '\n']) {
        format!("\"{}\"", x.replace('"', "\"\""))
    } else {
        x.to_string()
    }
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(
            &row.iter()
                .map(|f| csv_field(f))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
    }
    out
}

fn opt(x: &Option<String>) -> String {
    x.clone().unwrap_or_default()
}

fn opt_bool(x: Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_default()
}

fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|p| p.0.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn edge_label(e: &[String; 2]) -> String {
    format!("{}-{}", e[0], e[1])
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
                out.push('\n');
                out
            }
            OutputFormat::Csv => self.csv(),
            OutputFormat::Plain => self.plain(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Report::Graph(r) => csv(
                &["source", "target"],
                &r.edges.iter().map(|e| e.to_vec()).collect::<Vec<_>>(),
            ),
            Report::Vertices(r) => match &r.vertices {
                None => csv(&["count"], &[vec![r.count.clone()]]),
                Some(vs) => {
                    let labels: Vec<String> = r.edges.iter().map(edge_label).collect();
                    csv(&labels.iter().map(String::as_str).collect::<Vec<_>>(), vs)
                }
            },
            Report::Volume(r) => csv(
                &["partition", "n", "lidskii", "closed_form", "agree"],
                &[vec![
                    r.partition.clone(),
                    r.n.clone(),
                    r.lidskii.clone(),
                    opt(&r.closed_form),
                    opt_bool(r.agree),
                ]],
            ),
            Report::Points(r) => csv(
                &[
                    "partition",
                    "n",
                    "lidskii",
                    "kostant",
                    "closed_form",
                    "agree",
                ],
                &[vec![
                    r.partition.clone(),
                    r.n.clone(),
                    r.lidskii.clone(),
                    r.kostant.clone(),
                    opt(&r.closed_form),
                    r.agree.to_string(),
                ]],
            ),
            Report::Ehrhart(r) => {
                let rows: Vec<Vec<String>> = r
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(d, c)| {
                        let closed = r
                            .closed_form
                            .as_ref()
                            .and_then(|v| v.get(d).cloned())
                            .unwrap_or_default();
                        vec![d.to_string(), c.clone(), closed]
                    })
                    .collect();
                csv(&["degree", "coefficient", "closed_form"], &rows)
            }
            Report::Faces(r) => match &r.faces {
                Some(faces) => csv(
                    &["face"],
                    &faces.iter().map(|f| vec![f.clone()]).collect::<Vec<_>>(),
                ),
                None => {
                    let rows: Vec<Vec<String>> =
                        (0..r.f_vector.len().max(r.product_f_vector.len()))
                            .map(|d| {
                                vec![
                                    d.to_string(),
                                    r.f_vector.get(d).cloned().unwrap_or_default(),
                                    r.product_f_vector.get(d).cloned().unwrap_or_default(),
                                ]
                            })
                            .collect();
                    csv(&["dim", "faces", "product_faces"], &rows)
                }
            },
            Report::Hpoly(r) => {
                let rows: Vec<Vec<String>> = r
                    .coefficients
                    .iter()
                    .zip(&r.from_f_vector)
                    .enumerate()
                    .map(|(d, (h, f))| vec![d.to_string(), h.clone(), f.clone()])
                    .collect();
                csv(&["degree", "h", "from_f_vector"], &rows)
            }
            Report::Ct(r) => csv(
                &[
                    "partition",
                    "n",
                    "truncation",
                    "series",
                    "lidskii",
                    "closed_form",
                    "agree",
                ],
                &[vec![
                    r.partition.clone(),
                    r.n.clone(),
                    r.truncation.clone(),
                    r.series.clone(),
                    r.lidskii.clone(),
                    opt(&r.closed_form),
                    r.agree.to_string(),
                ]],
            ),
            Report::Tesler(r) => csv(
                &["n", "product_form", "catalan_form", "lidskii", "agree"],
                &[vec![
                    r.n.clone(),
                    r.product_form.clone(),
                    r.catalan_form.clone(),
                    opt(&r.lidskii),
                    r.agree.to_string(),
                ]],
            ),
            Report::Table(r) => {
                let rows: Vec<Vec<String>> = r
                    .rows
                    .iter()
                    .map(|row| {
                        vec![
                            row.n.clone(),
                            row.volume.clone(),
                            row.stabilized.to_string(),
                        ]
                    })
                    .collect();
                csv(&["n", "volume", "stabilized"], &rows)
            }
        }
    }

    fn plain(&self) -> String {
        match self {
            Report::Graph(r) => r
                .edges
                .iter()
                .map(|e| format!("{} {}\n", e[0], e[1]))
                .collect(),
            Report::Vertices(r) => match &r.vertices {
                None => format!("{}\n", r.count),
                Some(vs) => vs.iter().map(|v| v.join(" ") + "\n").collect(),
            },
            Report::Volume(r) => key_values(&[
                ("lidskii", r.lidskii.clone()),
                (
                    "closed_form",
                    r.closed_form.clone().unwrap_or_else(|| "-".into()),
                ),
                ("agree", r.agree.map_or("-".into(), |b| b.to_string())),
            ]),
            Report::Points(r) => key_values(&[
                ("lidskii", r.lidskii.clone()),
                ("kostant", r.kostant.clone()),
                (
                    "closed_form",
                    r.closed_form.clone().unwrap_or_else(|| "-".into()),
                ),
                ("agree", r.agree.to_string()),
            ]),
            Report::Ehrhart(r) => {
                let terms: Vec<String> = r
                    .coefficients
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.as_str() != "0/1")
                    .map(|(d, c)| match d {
                        0 => format!("({c})"),
                        1 => format!("({c})t"),
                        _ => format!("({c})t^{d}"),
                    })
                    .collect();
                key_values(&[
                    ("ehrhart", terms.join(" + ")),
                    ("normalized_volume", r.normalized_volume.clone()),
                    ("agree", r.agree.map_or("-".into(), |b| b.to_string())),
                ])
            }
            Report::Faces(r) => {
                let mut out = key_values(&[
                    ("f_vector", r.f_vector.join(" ")),
                    ("product_f_vector", r.product_f_vector.join(" ")),
                    ("total", r.total.clone()),
                    ("agree", r.agree.to_string()),
                ]);
                for f in r.faces.iter().flatten() {
                    out.push_str(f);
                    out.push('\n');
                }
                out
            }
            Report::Hpoly(r) => format!("{}\n", r.coefficients.join(" ")),
            Report::Ct(r) => key_values(&[
                ("series", r.series.clone()),
                ("lidskii", r.lidskii.clone()),
                (
                    "closed_form",
                    r.closed_form.clone().unwrap_or_else(|| "-".into()),
                ),
                ("truncation", r.truncation.clone()),
                ("agree", r.agree.to_string()),
            ]),
            Report::Tesler(r) => key_values(&[
                ("product_form", r.product_form.clone()),
                ("catalan_form", r.catalan_form.clone()),
                ("lidskii", r.lidskii.clone().unwrap_or_else(|| "-".into())),
                ("agree", r.agree.to_string()),
            ]),
            Report::Table(r) => {
                let star = &r.stabilization_index;
                let head: Vec<String> = r
                    .rows
                    .iter()
                    .map(|row| {
                        if &row.n == star {
                            format!("{}*", row.n)
                        } else {
                            row.n.clone()
                        }
                    })
                    .collect();
                let vols: Vec<&String> = r.rows.iter().map(|row| &row.volume).collect();
                let widths: Vec<usize> = head
                    .iter()
                    .zip(&vols)
                    .map(|(h, v)| h.len().max(v.len()))
                    .collect();
                let label = format!("vol F_G(({}),n)", r.partition);
                let lw = label.len();
                let mut out = String::new();
                let _ = write!(out, "{:>lw$} |", "n");
                for (h, w) in head.iter().zip(&widths) {
                    let _ = write!(out, " {h:<w$}");
                }
                out = out.trim_end().to_string();
                let _ = write!(out, "\n{label} |");
                for (v, w) in vols.iter().zip(&widths) {
                    let _ = write!(out, " {v:<w$}");
                }
                out = out.trim_end().to_string();
                let _ = writeln!(out, "\n* stabilization index n* = {star}");
                out
            }
        }
    }
}
