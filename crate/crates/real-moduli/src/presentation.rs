//! Structured presentations of graded-commutative algebras.
//!
//! A [`GradedAlgebraPresentation`] lists generators (label, degree, kind)
//! together with the two relation shapes that actually occur in the
//! cohomology rings computed here: no relation at all, or a single sum of
//! same-degree exterior generators (the quotient `Λ(b_1,…,b_m)/(b_1+…+b_m)`).
//! This is enough to print the ring and to read off its Poincaré series.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::CircleKind;

/// Kind of a free graded-commutative generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Odd degree, squares to zero.
    Exterior,
    /// Even degree, free polynomial.
    Polynomial,
    /// Even degree, divided powers `γ_k` with `γ_i γ_j = C(i+j, i) γ_{i+j}`.
    DividedPower,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

impl Generator {
    pub fn new(label: impl Into<String>, degree: u32, kind: GeneratorKind) -> Self {
        Generator {
            label: label.into(),
            degree,
            kind,
        }
    }

    /// Graded commutativity in characteristic != 2 forces exterior generators
    /// into odd degree and polynomial/divided-power generators into even degree.
    pub fn check_degree_parity(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::GeneratorDegreeZero {
                label: self.label.clone(),
            });
        }
        let odd = self.degree % 2 == 1;
        let wants_odd = matches!(self.kind, GeneratorKind::Exterior);
        if odd != wants_odd {
            return Err(Error::GeneratorDegreeParity {
                label: self.label.clone(),
                degree: self.degree,
            });
        }
        Ok(())
    }
}

/// Relation shapes supported by the presentation printer and the Poincaré
/// series reader.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// Placeholder for "no relation"; kept so relation lists round-trip.
    Empty,
    /// A sum of at least two same-degree exterior generators set to zero.
    Sum(Vec<String>),
}

/// How much of the ring structure the presentation is claimed to pin down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FreenessClaim {
    /// Free graded-commutative on the listed generators.
    Free,
    /// Free in characteristic zero; in odd characteristic the even tower is a
    /// divided-power algebra with the same graded dimensions.
    FreeCharZeroOnly,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedAlgebraPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    pub freeness_claim: FreenessClaim,
}

impl GradedAlgebraPresentation {
    pub fn free(generators: Vec<Generator>, freeness_claim: FreenessClaim) -> Self {
        GradedAlgebraPresentation {
            generators,
            relations: Vec::new(),
            freeness_claim,
        }
    }

    /// The algebra with no generators (just the ground field).
    pub fn trivial() -> Self {
        GradedAlgebraPresentation {
            generators: Vec::new(),
            relations: Vec::new(),
            freeness_claim: FreenessClaim::Free,
        }
    }

    pub fn lookup(&self, label: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.label == label)
    }

    /// Check generator degree parities and that every relation is one of the
    /// supported shapes over existing exterior generators of a single degree.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for g in &self.generators {
            g.check_degree_parity()?;
            if !seen.insert(g.label.as_str()) {
                return Err(Error::DuplicateGenerator(g.label.clone()));
            }
        }
        for rel in &self.relations {
            let labels = match rel {
                Relation::Empty => continue,
                Relation::Sum(labels) => labels,
            };
            if labels.len() < 2 {
                return Err(Error::UnsupportedRelation(
                    "sum relation needs at least two generators".into(),
                ));
            }
            let mut degree = None;
            for label in labels {
                let gen = self
                    .lookup(label)
                    .ok_or_else(|| Error::UnknownGenerator(label.clone()))?;
                if gen.kind != GeneratorKind::Exterior {
                    return Err(Error::UnsupportedRelation(format!(
                        "sum relation references non-exterior generator {label}"
                    )));
                }
                match degree {
                    None => degree = Some(gen.degree),
                    Some(d) if d != gen.degree => {
                        return Err(Error::UnsupportedRelation(
                            "sum relation mixes degrees".into(),
                        ))
                    }
                    _ => {}
                }
            }
            let mut dedup = labels.clone();
            dedup.sort();
            dedup.dedup();
            if dedup.len() != labels.len() {
                return Err(Error::UnsupportedRelation(
                    "sum relation repeats a generator".into(),
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GradedAlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "k");
        }
        // Group consecutive generators of equal kind and degree.
        let mut groups: Vec<(GeneratorKind, u32, Vec<&str>)> = Vec::new();
        for g in &self.generators {
            match groups.last_mut() {
                Some((kind, degree, labels)) if *kind == g.kind && *degree == g.degree => {
                    labels.push(&g.label)
                }
                _ => groups.push((g.kind, g.degree, vec![&g.label])),
            }
        }
        let mut first = true;
        for (kind, degree, labels) in groups {
            if !first {
                write!(f, " ⊗ ")?;
            }
            first = false;
            let symbol = match kind {
                GeneratorKind::Exterior => "Λ",
                GeneratorKind::Polynomial => "S",
                GeneratorKind::DividedPower => "Γ",
            };
            write!(f, "{symbol}({}; deg {degree})", labels.join(","))?;
        }
        for rel in &self.relations {
            if let Relation::Sum(labels) = rel {
                write!(f, " / ({})", labels.join("+"))?;
            }
        }
        Ok(())
    }
}

/// Cohomology of the classifying space of the gauge symmetries living on a
/// single boundary circle, by circle kind.
///
/// Circles carrying an orientable restriction and antipodally glued circles
/// both contribute `Λ(q) ⊗ S(p)` with `deg q = 3`, `deg p = 4`; a circle whose
/// restriction is a Möbius bundle contributes only the ground field.
pub fn loop_group_presentation(circle: CircleKind) -> GradedAlgebraPresentation {
    match circle {
        CircleKind::IdentityOrientable | CircleKind::Antipodal => {
            GradedAlgebraPresentation::free(
                vec![
                    Generator::new("q", 3, GeneratorKind::Exterior),
                    Generator::new("p", 4, GeneratorKind::Polynomial),
                ],
                FreenessClaim::Free,
            )
        }
        CircleKind::IdentityMoebius => GradedAlgebraPresentation::trivial(),
    }
}
