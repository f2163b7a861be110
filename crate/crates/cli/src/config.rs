//! Scenario configuration: a TOML file describing the diagram, the roads,
//! the junctions and the scheme, convertible into a runnable network.

use std::collections::HashMap;

use dropflow::flux::TrafficAhead;
use dropflow::junction::JunctionSpec;
use dropflow::network::{
    InitialData, JunctionDef, Road, RoadNetwork, SchemeKind, SimulationConfig,
};
use dropflow::scheme::{BoundaryKind, Trace};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub flux: FluxSection,
    #[serde(default)]
    pub roads: Vec<RoadSection>,
    #[serde(default)]
    pub junctions: Vec<JunctionSection>,
    pub scheme: SchemeSection,
    #[serde(default)]
    pub flags: FlagsSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluxSection {
    pub d1: f64,
    pub d0: f64,
    pub e1: f64,
    pub e0: f64,
    pub u_star: f64,
    pub u_max: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoadSection {
    pub id: String,
    pub length: f64,
    /// Left endpoint; defaults to `-length` for roads entering a junction
    /// and `0` otherwise, matching the junction-at-origin convention.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<f64>,
    /// Expected interior cell count for the configured width; checked, not
    /// used to derive anything.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells_hint: Option<usize>,
    pub u0: InitialSection,
    /// Boundary descriptor of the road's external (non-junction) end.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundarySection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialSection {
    Constant(f64),
    /// `[[x_from, value], ...]` in absolute coordinates.
    Piecewise(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySection {
    pub kind: BoundaryKindName,
    pub trace: TraceSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ahead: Option<AheadName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKindName {
    Inflow,
    Outflow,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TraceSection {
    Constant(f64),
    Steps(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AheadName {
    #[serde(alias = "free")]
    FreeFlowing,
    Congested,
}

impl From<AheadName> for TrafficAhead {
    fn from(a: AheadName) -> Self {
        match a {
            AheadName::FreeFlowing => TrafficAhead::FreeFlowing,
            AheadName::Congested => TrafficAhead::Congested,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JunctionSection {
    pub kind: JunctionKindName,
    #[serde(rename = "in")]
    pub inflow: Vec<String>,
    #[serde(rename = "out")]
    pub outflow: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ahead_overrides: Option<Vec<AheadName>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JunctionKindName {
    OneToOne,
    OneToTwo,
    TwoToOne,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSection {
    pub name: SchemeName,
    pub lambda: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(alias = "T")]
    pub t_end: f64,
    pub dx: f64,
    #[serde(default)]
    pub output_times: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeName {
    Splitting,
    Regularized,
    #[serde(alias = "exact_reference")]
    Exact,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsSection {
    #[serde(default)]
    pub strict_paper_algorithms: bool,
    #[serde(default)]
    pub paper_time_stop: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSection {
    pub dx: Vec<f64>,
    pub schemes: Vec<TableSchemeSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSchemeSection {
    pub name: SchemeName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

/// Configuration error with a field-level message.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    fn scheme_kind(
        &self,
        name: SchemeName,
        epsilon: Option<f64>,
    ) -> Result<SchemeKind, ConfigError> {
        Ok(match name {
            SchemeName::Splitting => SchemeKind::Splitting,
            SchemeName::Regularized => SchemeKind::Regularized {
                epsilon: epsilon.ok_or_else(|| {
                    ConfigError("scheme `regularized` needs field `epsilon`".into())
                })?,
            },
            SchemeName::Exact => SchemeKind::ExactReference,
        })
    }

    /// Build the runnable network and simulation settings.
    pub fn build(&self) -> Result<(RoadNetwork, SimulationConfig), ConfigError> {
        if self.roads.is_empty() {
            return Err(ConfigError(
                "missing field: at least one [[roads]] entry".into(),
            ));
        }
        let flux = dropflow::DiscFlux::new(
            self.flux.d1,
            self.flux.d0,
            self.flux.e1,
            self.flux.e0,
            self.flux.u_star,
            self.flux.u_max,
        )
        .map_err(|e| ConfigError(format!("[flux]: {e}")))?;

        let index: HashMap<&str, usize> = self
            .roads
            .iter()
            .enumerate()
            .map(|(i, r)| (r.id.as_str(), i))
            .collect();
        if index.len() != self.roads.len() {
            return Err(ConfigError("duplicate road ids".into()));
        }
        let resolve = |id: &str| -> Result<usize, ConfigError> {
            index
                .get(id)
                .copied()
                .ok_or_else(|| ConfigError(format!("junction references unknown road `{id}`")))
        };

        let mut enters_junction = vec![false; self.roads.len()];
        let mut junctions = Vec::new();
        for (k, j) in self.junctions.iter().enumerate() {
            let spec = match j.kind {
                JunctionKindName::OneToOne => JunctionSpec::one_to_one(),
                JunctionKindName::OneToTwo => {
                    let beta = j.beta.as_ref().ok_or_else(|| {
                        ConfigError(format!("junction {k}: `one_to_two` needs field `beta`"))
                    })?;
                    if beta.len() != 2 {
                        return Err(ConfigError(format!(
                            "junction {k}: `beta` needs two entries"
                        )));
                    }
                    JunctionSpec::one_to_two(beta[0], beta[1])
                        .map_err(|e| ConfigError(format!("junction {k}: {e}")))?
                }
                JunctionKindName::TwoToOne => {
                    let q = j.q.ok_or_else(|| {
                        ConfigError(format!("junction {k}: `two_to_one` needs field `q`"))
                    })?;
                    JunctionSpec::two_to_one(q)
                        .map_err(|e| ConfigError(format!("junction {k}: {e}")))?
                }
            };
            let inflow = j
                .inflow
                .iter()
                .map(|id| resolve(id))
                .collect::<Result<Vec<_>, _>>()?;
            let outflow = j
                .outflow
                .iter()
                .map(|id| resolve(id))
                .collect::<Result<Vec<_>, _>>()?;
            for &r in &inflow {
                enters_junction[r] = true;
            }
            let mut def = JunctionDef::new(spec, inflow, outflow);
            if let Some(overrides) = &j.ahead_overrides {
                if overrides.len() != def.outflow.len() {
                    return Err(ConfigError(format!(
                        "junction {k}: `ahead_overrides` needs one entry per outgoing road"
                    )));
                }
                def.ahead = overrides.iter().map(|&a| a.into()).collect();
            }
            junctions.push(def);
        }

        let mut roads = Vec::new();
        for (r, road) in self.roads.iter().enumerate() {
            let origin = road.origin.unwrap_or(if enters_junction[r] {
                -road.length
            } else {
                0.0
            });
            let initial = match &road.u0 {
                InitialSection::Constant(u) => InitialData::Constant(*u),
                InitialSection::Piecewise(segments) => InitialData::Piecewise(segments.clone()),
            };
            if let Some(hint) = road.cells_hint {
                let intervals = (road.length / self.scheme.dx).round() as usize;
                if intervals != hint + 1 {
                    return Err(ConfigError(format!(
                        "road `{}`: cells_hint {hint} inconsistent with dx {} (gives {} cells)",
                        road.id,
                        self.scheme.dx,
                        intervals.saturating_sub(1)
                    )));
                }
            }
            // Default both ends to far-field traces matching the initial
            // datum, apply the explicit descriptor to its end, and let
            // junction wiring overwrite attached ends during assembly.
            let mut left = BoundaryKind::Inflow {
                trace: end_value(&road.u0, false),
            };
            let mut right = BoundaryKind::Outflow {
                trace: end_value(&road.u0, true),
                ahead: TrafficAhead::FreeFlowing,
            };
            if let Some(b) = &road.boundary {
                let trace = match &b.trace {
                    TraceSection::Constant(v) => Trace::constant(*v),
                    TraceSection::Steps(steps) => Trace::piecewise(steps.clone())
                        .map_err(|e| ConfigError(format!("road `{}`: {e}", road.id)))?,
                };
                match b.kind {
                    BoundaryKindName::Inflow => left = BoundaryKind::Inflow { trace },
                    BoundaryKindName::Outflow => {
                        right = BoundaryKind::Outflow {
                            trace,
                            ahead: b.ahead.map(Into::into).unwrap_or(TrafficAhead::FreeFlowing),
                        }
                    }
                }
            }
            roads.push(Road {
                id: road.id.clone(),
                origin,
                length: road.length,
                initial,
                left_boundary: left,
                right_boundary: right,
            });
        }

        let network = RoadNetwork::assemble(flux, roads, junctions)
            .map_err(|e| ConfigError(e.to_string()))?;
        let mut cfg = SimulationConfig::new(
            self.scheme.dx,
            self.scheme.lambda,
            self.scheme.t_end,
            self.scheme_kind(self.scheme.name, self.scheme.epsilon)?,
        );
        cfg.output_times = self.scheme.output_times.clone();
        cfg.paper_time_stop = self.flags.paper_time_stop;
        cfg.strict_paper_algorithms = self.flags.strict_paper_algorithms;
        cfg.record_traces = true;
        Ok((network, cfg))
    }
}

/// Far-field trace matching the initial datum at one road end; used when
/// the end has no explicit descriptor.
fn end_value(u0: &InitialSection, right_end: bool) -> Trace {
    match u0 {
        InitialSection::Constant(u) => Trace::constant(*u),
        InitialSection::Piecewise(segments) => {
            let v = if right_end {
                segments.last().map(|&(_, v)| v)
            } else {
                segments.first().map(|&(_, v)| v)
            };
            Trace::constant(v.unwrap_or(0.0))
        }
    }
}
