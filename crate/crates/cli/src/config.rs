use std::path::Path;

use clap::ValueEnum;
use meandro::models::{MeanderModel, QLogModel};
use meandro::series_engine::TermSequence;
use meandro::stack_geometry::{Perforation, PerforationConfig, PoleSpec, RadiusSpec};
use meandro::C64;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// `x^n / (1 + n z)`, poles `-1/n`.
    Meander,
    /// `x^n / (z^n - 1)`, poles at the n-th roots of unity.
    Qlog,
    /// `x^(n-1) / (z^n - 1)`.
    QlogShifted,
}

impl ModelKind {
    fn poles(self) -> PoleSpec {
        match self {
            ModelKind::Meander => PoleSpec::Meander,
            ModelKind::Qlog | ModelKind::QlogShifted => PoleSpec::RootsOfUnity,
        }
    }
}

pub enum Model {
    Meander(MeanderModel),
    QLog(QLogModel),
}

impl Model {
    pub fn seq(&self) -> &dyn TermSequence {
        match self {
            Model::Meander(m) => m,
            Model::QLog(m) => m,
        }
    }
}

/// Reads the perforation document, or the default `c = 0.05, alpha = 2,
/// lambda = 1.5` perforation matching the model.
pub fn load_perforation(
    path: Option<&Path>,
    kind: ModelKind,
) -> Result<PerforationConfig, CliError> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            PerforationConfig::from_json(&text).map_err(|e| match e {
                meandro::Error::Config(m) => CliError::Config(m),
                e => CliError::Config(e.to_string()),
            })
        }
        None => Ok(PerforationConfig {
            poles: kind.poles(),
            radius: RadiusSpec::Diophantine {
                c: 0.05,
                alpha: 2.0,
            },
            lambda: 1.5,
        }),
    }
}

pub fn build_perforation(cfg: &PerforationConfig) -> Result<Perforation, CliError> {
    cfg.build().map_err(|e| CliError::Config(e.to_string()))
}

pub fn build_model(kind: ModelKind, x: C64, cfg: &PerforationConfig) -> Result<Model, CliError> {
    if cfg.poles != kind.poles() {
        return Err(CliError::Config(format!(
            "model {kind:?} needs poles {:?}, config has {:?}",
            kind.poles(),
            cfg.poles
        )));
    }
    let RadiusSpec::Diophantine { c, alpha } = cfg.radius else {
        return Err(CliError::Config(
            "models need a Diophantine radius {\"c\", \"alpha\"}".into(),
        ));
    };
    let lambda = cfg.lambda;
    let model = match kind {
        ModelKind::Meander => MeanderModel::new(x, c, alpha, lambda).map(Model::Meander),
        ModelKind::Qlog => QLogModel::new(x, c, alpha, lambda).map(Model::QLog),
        ModelKind::QlogShifted => QLogModel::shifted(x, c, alpha, lambda).map(Model::QLog),
    };
    model.map_err(|e| CliError::Config(e.to_string()))
}
