use std::collections::HashMap;
use std::fmt::Write as _;

use super::{condition_polynomials, condition_set, coordinate_pattern, CoordMatrix};
use crate::algebra::{default_names, MultiPoly, Rational};
use crate::combinatorics::{Label, Necklace, Permutation, SchubertData};
use crate::error::{Error, Result};

/// One Schubert intersection `X_{w_1}(t_1) ∩ ... ∩ X_{w_m}(t_m)` written as a
/// polynomial system in the `M_ι` chart.
#[derive(Clone, Debug)]
pub struct Instance {
    data: SchubertData,
    points: Vec<Rational>,
    generators: Vec<MultiPoly>,
    necklace: Necklace,
    nvars: usize,
}

/// Necklace label of every condition: its descent when Grassmannian, else an
/// opaque letter per distinct non-Grassmannian permutation (`A`, `B`, ...).
pub fn condition_labels(data: &SchubertData) -> Vec<Label> {
    let mut opaque: Vec<Permutation> = Vec::new();
    data.conditions()
        .iter()
        .map(|w| match w.descent_data().delta {
            Some(d) => Label::Descent(d),
            None => {
                let k = match opaque.iter().position(|v| v == w) {
                    Some(k) => k,
                    None => {
                        opaque.push(w.clone());
                        opaque.len() - 1
                    }
                };
                Label::Opaque((b'A' + k as u8) as char)
            }
        })
        .collect()
}

/// Builds the instance for valid Schubert data.
pub fn build_instance(data: &SchubertData, points: &[Rational]) -> Result<Instance> {
    if !data.is_valid() {
        return Err(Error::InvalidSchubertData(format!(
            "lengths of {} sum to {}, but dim {} = {}",
            data.compact(),
            data.total_length(),
            data.flag_type(),
            data.flag_type().dimension()
        )));
    }
    build_instance_unchecked(data, points)
}

/// Builds the instance without requiring the lengths to sum to the
/// dimension, for excess or deficient intersections.
pub fn build_instance_unchecked(data: &SchubertData, points: &[Rational]) -> Result<Instance> {
    let m = data.len();
    if points.len() != m {
        return Err(Error::InvalidInstance(format!(
            "{m} conditions but {} points",
            points.len()
        )));
    }
    for (i, p) in points.iter().enumerate() {
        if num_traits::Zero::is_zero(p) {
            return Err(Error::InvalidInstance(
                "the point 0 is the reference flag of the coordinate chart".into(),
            ));
        }
        if points[..i].contains(p) {
            return Err(Error::InvalidInstance(format!("repeated point {p}")));
        }
    }
    let ft = data.flag_type();
    let chart = chart(data)?;
    let mut cache: HashMap<(Permutation, Rational), Vec<MultiPoly>> = HashMap::new();
    let mut generators = Vec::new();
    for (w, t) in data.conditions().iter().zip(points) {
        let key = (w.clone(), t.clone());
        if !cache.contains_key(&key) {
            let mut polys = Vec::new();
            for c in condition_set(w, ft)? {
                polys.extend(condition_polynomials(&c, t, &chart)?);
            }
            cache.insert(key.clone(), polys);
        }
        generators.extend(cache[&key].iter().cloned());
    }

    let labels = condition_labels(data);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| points[i].cmp(&points[j]));
    let necklace = Necklace::new(order.iter().map(|&i| labels[i]).collect());

    Ok(Instance {
        data: data.clone(),
        points: points.to_vec(),
        generators,
        necklace,
        nvars: chart.variable_count(),
    })
}

/// The `M_ι` chart of the data's flag type.
pub fn chart(data: &SchubertData) -> Result<CoordMatrix> {
    let ft = data.flag_type();
    coordinate_pattern(&Permutation::identity(ft.n()), ft)
}

impl Instance {
    pub fn data(&self) -> &SchubertData {
        &self.data
    }

    /// `points()[i]` is where condition `i` is evaluated.
    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn necklace(&self) -> &Necklace {
        &self.necklace
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Plain-text form: a commented header followed by one polynomial per
    /// line in canonical form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let conds: Vec<String> = self
            .data
            .conditions()
            .iter()
            .map(|w| w.to_string())
            .collect();
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|p| format!("{}/{}", p.numer(), p.denom()))
            .collect();
        writeln!(s, "# flag_type {}", self.data.flag_type()).unwrap();
        writeln!(s, "# conditions {}", conds.join(" ")).unwrap();
        writeln!(s, "# points {}", pts.join(" ")).unwrap();
        writeln!(s, "# necklace {}", self.necklace).unwrap();
        writeln!(s, "# variables {}", self.nvars).unwrap();
        let names = default_names(self.nvars);
        for g in &self.generators {
            writeln!(s, "{}", g.to_canonical(&names)).unwrap();
        }
        s
    }
}
