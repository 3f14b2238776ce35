/*
Copyright 2026 The ppa-lab Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

use serde::Serialize;

use super::RegularityError;

/// Stand-in constant reported when every tabulated value is zero.
pub const DEGENERATE_L: f64 = 1e-12;
/// Exponents this close to one are reported as Lipschitz.
pub const LIPSCHITZ_EXPONENT_TOL: f64 = 0.05;
/// Largest accepted relative error of a log-log fit.
pub const MAX_FIT_ERROR: f64 = 0.25;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ModulusForm {
    Lipschitz {
        l: f64,
    },
    PowerLaw {
        c: f64,
        p: f64,
    },
    /// `(r, rho(r))` pairs sorted by `r`; `rho` may be `+inf`.
    Tabulated {
        #[serde(serialize_with = "ser_table")]
        table: Vec<(f64, f64)>,
    },
}

fn ser_table<S: serde::Serializer>(table: &[(f64, f64)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(table.len()))?;
    for &(r, v) in table {
        if v.is_finite() {
            seq.serialize_element(&(r, v))?;
        } else {
            seq.serialize_element(&(r, crate::serde_ext::ext_real_label(v)))?;
        }
    }
    seq.end()
}

/// Nondecreasing modulus `rho` with `rho(0) = 0`, valid on `[0, radius]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModulusFunction {
    pub form: ModulusForm,
    #[serde(serialize_with = "crate::serde_ext::ext_real")]
    pub radius: f64,
    /// Set when the estimate was identically zero, so any positive constant
    /// certifies.
    pub degenerate: bool,
}

fn check_radius(radius: f64) -> Result<(), RegularityError> {
    if radius > 0.0 {
        Ok(())
    } else {
        Err(RegularityError::InvalidModulus(format!(
            "radius must be positive, got {radius}"
        )))
    }
}

impl ModulusFunction {
    pub fn lipschitz(l: f64, radius: f64) -> Result<Self, RegularityError> {
        check_radius(radius)?;
        if !(l >= 0.0 && l.is_finite()) {
            return Err(RegularityError::InvalidModulus(format!(
                "Lipschitz constant {l}"
            )));
        }
        Ok(Self {
            form: ModulusForm::Lipschitz { l },
            radius,
            degenerate: false,
        })
    }

    pub fn power_law(c: f64, p: f64, radius: f64) -> Result<Self, RegularityError> {
        check_radius(radius)?;
        if !(c >= 0.0 && c.is_finite()) || !(p > 0.0 && p <= 1.0) {
            return Err(RegularityError::InvalidModulus(format!(
                "power law needs c >= 0 and p in (0, 1], got c = {c}, p = {p}"
            )));
        }
        Ok(Self {
            form: ModulusForm::PowerLaw { c, p },
            radius,
            degenerate: false,
        })
    }

    pub fn tabulated(table: Vec<(f64, f64)>, radius: f64) -> Result<Self, RegularityError> {
        check_radius(radius)?;
        if table.is_empty() {
            return Err(RegularityError::InvalidModulus("empty table".into()));
        }
        for w in table.windows(2) {
            if !(w[0].0 < w[1].0) || w[0].1 > w[1].1 {
                return Err(RegularityError::InvalidModulus(
                    "table must be sorted by r and nondecreasing".into(),
                ));
            }
        }
        if table
            .iter()
            .any(|&(r, v)| !(r > 0.0 && r.is_finite()) || v.is_nan() || v < 0.0)
        {
            return Err(RegularityError::InvalidModulus(
                "table entries need r > 0 and rho >= 0".into(),
            ));
        }
        Ok(Self {
            form: ModulusForm::Tabulated { table },
            radius,
            degenerate: false,
        })
    }

    /// `rho(r)`. Tabulated values step up to the next grid point and are
    /// `+inf` beyond the last one.
    pub fn eval(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        match &self.form {
            ModulusForm::Lipschitz { l } => l * r,
            ModulusForm::PowerLaw { c, p } => c * r.powf(*p),
            ModulusForm::Tabulated { table } => table
                .iter()
                .find(|&&(ri, _)| ri >= r)
                .map_or(f64::INFINITY, |&(_, v)| v),
        }
    }

    pub fn covers(&self, r: f64) -> bool {
        r <= self.radius
    }

    pub fn is_lipschitz(&self) -> Option<f64> {
        match self.form {
            ModulusForm::Lipschitz { l } => Some(l),
            _ => None,
        }
    }

    pub fn table(&self) -> Option<&[(f64, f64)]> {
        match &self.form {
            ModulusForm::Tabulated { table } => Some(table),
            _ => None,
        }
    }
}

/// Result of fitting `rho(r) ≈ c r^p` to a table.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModulusFit {
    pub modulus: ModulusFunction,
    /// Least-squares exponent (`NaN` for a degenerate table).
    pub exponent: f64,
    /// Least-squares prefactor.
    pub prefactor: f64,
    pub max_relative_error: f64,
}

pub fn fit_modulus(tab: &ModulusFunction) -> Result<ModulusFit, RegularityError> {
    let Some(table) = tab.table() else {
        return Err(RegularityError::InvalidModulus(
            "fit needs a tabulated modulus".into(),
        ));
    };
    if table.len() < 3 {
        return Err(RegularityError::InsufficientData(format!(
            "fit needs at least 3 entries, got {}",
            table.len()
        )));
    }
    if let Some(&(r, _)) = table.iter().find(|(_, v)| !v.is_finite()) {
        return Err(RegularityError::NotRContinuous { radius: r });
    }
    if table.iter().all(|&(_, v)| v == 0.0) {
        return Ok(ModulusFit {
            modulus: ModulusFunction {
                form: ModulusForm::Lipschitz { l: DEGENERATE_L },
                radius: tab.radius,
                degenerate: true,
            },
            exponent: f64::NAN,
            prefactor: 0.0,
            max_relative_error: 0.0,
        });
    }
    let pts: Vec<(f64, f64)> = table
        .iter()
        .filter(|&&(_, v)| v > 0.0)
        .map(|&(r, v)| (r.ln(), v.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(RegularityError::InsufficientData(
            "fewer than 3 positive entries".into(),
        ));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(RegularityError::InsufficientData(
            "radii are all equal".into(),
        ));
    }
    let p = sxy / sxx;
    let c = (my - p * mx).exp();
    let max_rel = table
        .iter()
        .filter(|&&(_, v)| v > 0.0)
        .map(|&(r, v)| ((c * r.powf(p) - v) / v).abs())
        .fold(0.0, f64::max);
    if max_rel > MAX_FIT_ERROR {
        return Err(RegularityError::FitRejected {
            max_relative_error: max_rel,
            exponent: p,
        });
    }
    if p <= 0.0 {
        return Err(RegularityError::FitRejected {
            max_relative_error: max_rel,
            exponent: p,
        });
    }
    // Constants are raised to dominate every table entry.
    let modulus = if (p - 1.0).abs() <= LIPSCHITZ_EXPONENT_TOL || p > 1.0 {
        let l = table.iter().map(|&(r, v)| v / r).fold(0.0, f64::max);
        ModulusFunction::lipschitz(l, tab.radius)?
    } else {
        let cmax = table
            .iter()
            .map(|&(r, v)| v / r.powf(p))
            .fold(0.0, f64::max);
        ModulusFunction::power_law(cmax, p, tab.radius)?
    };
    Ok(ModulusFit {
        modulus,
        exponent: p,
        prefactor: c,
        max_relative_error: max_rel,
    })
}

/// Log-spaced grid of `count` radii from `1e-6 · top` to `top`.
pub fn log_grid(top: f64, count: usize) -> Vec<f64> {
    let lo = (1e-6 * top).ln();
    let hi = top.ln();
    (0..count)
        .map(|i| (lo + (hi - lo) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Modulus `2 max(rho1, rho2)` with radius `min(sigma1, sigma2)`, which
/// certifies the sum of two maps.
pub fn sum_modulus(m1: &ModulusFunction, m2: &ModulusFunction) -> ModulusFunction {
    let radius = m1.radius.min(m2.radius);
    if m1.degenerate && m2.degenerate {
        return ModulusFunction {
            form: ModulusForm::Lipschitz {
                l: 2.0 * DEGENERATE_L,
            },
            radius,
            degenerate: true,
        };
    }
    // A degenerate modulus is identically zero.
    if m1.degenerate || m2.degenerate {
        let live = if m1.degenerate { m2 } else { m1 };
        return scaled_copy(live, radius);
    }
    match (&m1.form, &m2.form) {
        (ModulusForm::Lipschitz { l: a }, ModulusForm::Lipschitz { l: b }) => ModulusFunction {
            form: ModulusForm::Lipschitz { l: 2.0 * a.max(*b) },
            radius,
            degenerate: false,
        },
        (ModulusForm::PowerLaw { c: a, p }, ModulusForm::PowerLaw { c: b, p: q }) if p == q => {
            ModulusFunction {
                form: ModulusForm::PowerLaw {
                    c: 2.0 * a.max(*b),
                    p: *p,
                },
                radius,
                degenerate: false,
            }
        }
        _ => {
            let mut grid: Vec<f64> = m1
                .table()
                .into_iter()
                .chain(m2.table())
                .flat_map(|t| t.iter().map(|&(r, _)| r))
                .filter(|&r| r <= radius)
                .collect();
            if grid.is_empty() {
                grid = log_grid(if radius.is_finite() { radius } else { 1.0 }, 25);
            }
            grid.sort_by(f64::total_cmp);
            grid.dedup();
            let table = grid
                .iter()
                .map(|&r| (r, 2.0 * m1.eval(r).max(m2.eval(r))))
                .collect();
            ModulusFunction {
                form: ModulusForm::Tabulated { table },
                radius,
                degenerate: false,
            }
        }
    }
}

fn scaled_copy(m: &ModulusFunction, radius: f64) -> ModulusFunction {
    let form = match &m.form {
        ModulusForm::Lipschitz { l } => ModulusForm::Lipschitz { l: 2.0 * l },
        ModulusForm::PowerLaw { c, p } => ModulusForm::PowerLaw { c: 2.0 * c, p: *p },
        ModulusForm::Tabulated { table } => ModulusForm::Tabulated {
            table: table.iter().map(|&(r, v)| (r, 2.0 * v)).collect(),
        },
    };
    ModulusFunction {
        form,
        radius,
        degenerate: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_examples() {
        let a = ModulusFunction::lipschitz(1.0, 1.0).unwrap();
        let b = ModulusFunction::lipschitz(3.0, 2.0).unwrap();
        let s = sum_modulus(&a, &b);
        assert_eq!(s.form, ModulusForm::Lipschitz { l: 6.0 });
        assert_eq!(s.radius, 1.0);

        let zero = ModulusFunction {
            form: ModulusForm::Lipschitz { l: DEGENERATE_L },
            radius: 5.0,
            degenerate: true,
        };
        let l = ModulusFunction::lipschitz(2.5, 3.0).unwrap();
        let s = sum_modulus(&zero, &l);
        assert_eq!(s.form, ModulusForm::Lipschitz { l: 5.0 });
        assert_eq!(s.radius, 3.0);

        let pw = ModulusFunction::power_law(1.0, 1.0 / 3.0, 1.0).unwrap();
        let s = sum_modulus(&pw, &a);
        let table = s.table().unwrap();
        assert_eq!(table.len(), 25);
        for &(r, v) in table {
            assert!((v - 2.0 * r.powf(1.0 / 3.0).max(r)).abs() < 1e-15);
        }
    }

    #[test]
    fn tabulated_eval_steps_up() {
        let t = ModulusFunction::tabulated(vec![(0.1, 1.0), (1.0, 2.0)], 1.0).unwrap();
        assert_eq!(t.eval(0.0), 0.0);
        assert_eq!(t.eval(0.05), 1.0);
        assert_eq!(t.eval(0.5), 2.0);
        assert_eq!(t.eval(1.5), f64::INFINITY);
        assert!(ModulusFunction::tabulated(vec![(0.1, 2.0), (1.0, 1.0)], 1.0).is_err());
    }

    #[test]
    fn fit_rejects_bad_shape() {
        let t = ModulusFunction::tabulated(
            vec![(0.001, 1.0), (0.01, 1.0), (0.1, 50.0), (1.0, 51.0)],
            1.0,
        )
        .unwrap();
        assert!(matches!(
            fit_modulus(&t),
            Err(RegularityError::FitRejected { .. })
        ));
    }
}
