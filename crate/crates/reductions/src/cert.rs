use formula_core::{
    check_valid_with, classify, parse, render, CheckConfig, CheckError, Env, Formula, ParseError,
    QuantClass, Verdict,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A formula read as its universal closure over the listed variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub formula: Formula,
    pub free_vars: Vec<String>,
}

impl Sentence {
    /// Lists exactly the free variables of `formula`, sorted.
    pub fn new(formula: Formula) -> Sentence {
        let free_vars = formula.free_vars().into_iter().collect();
        Sentence { formula, free_vars }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obligation {
    pub label: String,
    pub premises: Vec<Sentence>,
    pub conclusion: Sentence,
}

impl Obligation {
    pub fn new(
        label: impl Into<String>,
        premises: Vec<Formula>,
        conclusion: Formula,
    ) -> Obligation {
        Obligation {
            label: label.into(),
            premises: premises.into_iter().map(Sentence::new).collect(),
            conclusion: Sentence::new(conclusion),
        }
    }

    pub fn bare(label: impl Into<String>, conclusion: Formula) -> Obligation {
        Obligation::new(label, vec![], conclusion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassClaim {
    pub formula: Formula,
    pub class: QuantClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub name: String,
    pub inputs: Vec<Formula>,
    pub outputs: Vec<Formula>,
    pub obligations: Vec<Obligation>,
    pub class_claims: Vec<ClassClaim>,
}

impl ReductionCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CertDoc::from(self)).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<ReductionCertificate, DocError> {
        let doc: CertDoc = serde_json::from_str(text)?;
        doc.try_into()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("formula: {0}")]
    Formula(#[from] ParseError),
    #[error("{0}")]
    Class(String),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct SentenceDoc {
    formula: String,
    free_vars: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ObligationDoc {
    label: String,
    premises: Vec<SentenceDoc>,
    conclusion: String,
    free_vars: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ClaimDoc {
    formula: String,
    class: String,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CertDoc {
    name: String,
    inputs: Vec<String>,
    outputs: Vec<String>,
    obligations: Vec<ObligationDoc>,
    class_claims: Vec<ClaimDoc>,
}

impl From<&ReductionCertificate> for CertDoc {
    fn from(c: &ReductionCertificate) -> Self {
        CertDoc {
            name: c.name.clone(),
            inputs: c.inputs.iter().map(render).collect(),
            outputs: c.outputs.iter().map(render).collect(),
            obligations: c
                .obligations
                .iter()
                .map(|o| ObligationDoc {
                    label: o.label.clone(),
                    premises: o
                        .premises
                        .iter()
                        .map(|p| SentenceDoc {
                            formula: render(&p.formula),
                            free_vars: p.free_vars.clone(),
                        })
                        .collect(),
                    conclusion: render(&o.conclusion.formula),
                    free_vars: o.conclusion.free_vars.clone(),
                })
                .collect(),
            class_claims: c
                .class_claims
                .iter()
                .map(|k| ClaimDoc {
                    formula: render(&k.formula),
                    class: k.class.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<CertDoc> for ReductionCertificate {
    type Error = DocError;

    fn try_from(d: CertDoc) -> Result<Self, DocError> {
        let all = |v: Vec<String>| v.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>();
        let sentence = |formula: &str, free_vars: Vec<String>| -> Result<Sentence, DocError> {
            Ok(Sentence {
                formula: parse(formula)?,
                free_vars,
            })
        };
        let mut obligations = Vec::new();
        for o in d.obligations {
            let premises = o
                .premises
                .into_iter()
                .map(|p| sentence(&p.formula, p.free_vars))
                .collect::<Result<Vec<_>, _>>()?;
            obligations.push(Obligation {
                label: o.label,
                premises,
                conclusion: sentence(&o.conclusion, o.free_vars)?,
            });
        }
        let class_claims = d
            .class_claims
            .into_iter()
            .map(|k| {
                Ok(ClassClaim {
                    formula: parse(&k.formula)?,
                    class: k.class.parse().map_err(DocError::Class)?,
                })
            })
            .collect::<Result<Vec<_>, DocError>>()?;
        Ok(ReductionCertificate {
            name: d.name,
            inputs: all(d.inputs)?,
            outputs: all(d.outputs)?,
            obligations,
            class_claims,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    /// `vacuous`: some premise already fails at the test width.
    Valid {
        vacuous: bool,
    },
    Counterexample(Env),
    Error(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObligationReport {
    pub label: String,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub formula: String,
    pub claimed: QuantClass,
    pub found: QuantClass,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub width: u32,
    pub obligations: Vec<ObligationReport>,
    pub claims: Vec<ClaimReport>,
}

impl Report {
    pub fn all_valid(&self) -> bool {
        self.obligations
            .iter()
            .all(|o| matches!(o.status, Status::Valid { .. }))
            && self.claims.iter().all(|c| c.holds)
    }

    pub fn counterexamples(&self) -> usize {
        self.obligations
            .iter()
            .filter(|o| matches!(o.status, Status::Counterexample(_)))
            .count()
    }

    pub fn text(&self) -> String {
        let mut out = format!("{} @ width {}\n", self.name, self.width);
        for o in &self.obligations {
            let s = match &o.status {
                Status::Valid { vacuous: false } => "Valid".to_string(),
                Status::Valid { vacuous: true } => "Valid (vacuous)".to_string(),
                Status::Counterexample(env) => format!("Counterexample {}", env_text(env)),
                Status::Error(e) => format!("Error: {e}"),
            };
            out.push_str(&format!("  {:<24} {s}\n", o.label));
        }
        for c in &self.claims {
            let mark = if c.holds { "ok" } else { "FAILED" };
            out.push_str(&format!(
                "  class {} within {}: {mark}\n",
                c.found, c.claimed
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let obligations: Vec<_> = self
            .obligations
            .iter()
            .map(|o| match &o.status {
                Status::Valid { vacuous } => {
                    serde_json::json!({"label": o.label, "status": "Valid", "vacuous": vacuous})
                }
                Status::Counterexample(env) => {
                    let env: BTreeMap<_, _> = env
                        .iter()
                        .map(|(k, v)| (k.clone(), v.to_string()))
                        .collect();
                    serde_json::json!({"label": o.label, "status": "Counterexample", "env": env})
                }
                Status::Error(e) => {
                    serde_json::json!({"label": o.label, "status": "Error", "message": e})
                }
            })
            .collect();
        let claims: Vec<_> = self
            .claims
            .iter()
            .map(|c| {
                serde_json::json!({
                    "formula": c.formula,
                    "claimed": c.claimed.to_string(),
                    "found": c.found.to_string(),
                    "holds": c.holds,
                })
            })
            .collect();
        serde_json::json!({
            "name": self.name,
            "width": self.width,
            "obligations": obligations,
            "classClaims": claims,
        })
    }
}

pub fn env_text(env: &Env) -> String {
    let parts: Vec<String> = env.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn check_certificate(cert: &ReductionCertificate, width: u32) -> Result<Report, CheckError> {
    check_certificate_with(cert, width, &CheckConfig::default())
}

pub fn check_certificate_with(
    cert: &ReductionCertificate,
    width: u32,
    cfg: &CheckConfig,
) -> Result<Report, CheckError> {
    if width > cfg.max_width {
        return Err(CheckError::WidthCap {
            width,
            max: cfg.max_width,
        });
    }
    let obligations = cert
        .obligations
        .par_iter()
        .map(|o| ObligationReport {
            label: o.label.clone(),
            status: check_obligation(o, width, cfg),
        })
        .collect();
    let claims = cert
        .class_claims
        .iter()
        .map(|c| {
            let found = classify(&c.formula);
            ClaimReport {
                formula: render(&c.formula),
                claimed: c.class,
                found,
                holds: satisfies(found, c.class),
            }
        })
        .collect();
    Ok(Report {
        name: cert.name.clone(),
        width,
        obligations,
        claims,
    })
}

/// `found` lies inside the claimed class.
pub fn satisfies(found: QuantClass, claimed: QuantClass) -> bool {
    use formula_core::ClassKind::*;
    match claimed.kind {
        SigmaHat => found.within(true, claimed.level),
        PiHat => found.within(false, claimed.level),
        SigmaHatB0 => found == QuantClass::B0,
        NonStrict => true,
    }
}

pub fn check_obligation(o: &Obligation, width: u32, cfg: &CheckConfig) -> Status {
    for p in &o.premises {
        match check_valid_with(&p.formula, &p.free_vars, width, cfg) {
            Ok(Verdict::Valid) => {}
            Ok(Verdict::Counterexample(_)) => return Status::Valid { vacuous: true },
            Err(e) => return Status::Error(format!("premise: {e}")),
        }
    }
    match check_valid_with(&o.conclusion.formula, &o.conclusion.free_vars, width, cfg) {
        Ok(Verdict::Valid) => Status::Valid { vacuous: false },
        Ok(Verdict::Counterexample(env)) => Status::Counterexample(env),
        Err(e) => Status::Error(e.to_string()),
    }
}
