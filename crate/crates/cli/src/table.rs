//! Closed-form tables over a range of particle numbers.

use anyhow::{bail, Result};
use clap::ValueEnum;
use qsd_core::discrimination::{
    counting_test_asymptote, counting_test_error, distinguishable_particles_error, photon_error,
};
use qsd_core::fock::{
    fock_overlap_closed_form, rotated_twin_fock, twin_fock, MAX_TWIN_FOCK_N,
};
use qsd_core::qubits::distinguishable_overlap;
use serde::Serialize;

use crate::report::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// State overlaps: qubit product formula, photon closed form, photon expansion.
    Overlap,
    /// Per-particle counting-test error and its large-n asymptote.
    Counting,
    /// Photon-description identification error with log10 companions.
    Photon,
    /// Distinguishable-qubit identification error, exact and approximate.
    Distinguishable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
struct OverlapRow {
    n: u64,
    qubit_overlap: f64,
    photon_closed_form: f64,
    /// Direct polynomial-expansion value; empty beyond the expansion cap.
    photon_expansion: Option<f64>,
}

#[derive(Serialize)]
struct CountingRow {
    n: u64,
    p_error: f64,
    asymptote: f64,
    relative_gap: f64,
}

#[derive(Serialize)]
struct PhotonRow {
    n: u64,
    exact: f64,
    exact_log10: Option<f64>,
    asymptote: Option<f64>,
    asymptote_log10: Option<f64>,
}

#[derive(Serialize)]
struct DistinguishableRow {
    n: u64,
    exact: f64,
    approx: f64,
    exact_log10: f64,
    approx_log10: f64,
}

fn optional(value: Option<f64>) -> String {
    value.map(fmt_f64).unwrap_or_default()
}

pub fn render(quantity: Quantity, n_min: u64, n_max: u64, format: Format) -> Result<String> {
    if n_min < 1 || n_min > n_max {
        bail!("invalid range: require 1 <= n-min <= n-max, got {n_min}..{n_max}");
    }
    let range = n_min..=n_max;
    Ok(match quantity {
        Quantity::Overlap => {
            let rows: Vec<OverlapRow> = range
                .map(|n| OverlapRow {
                    n,
                    qubit_overlap: distinguishable_overlap(n),
                    photon_closed_form: fock_overlap_closed_form(n as usize),
                    photon_expansion: (n as usize <= MAX_TWIN_FOCK_N).then(|| {
                        rotated_twin_fock(n as usize)
                            .expect("n within cap")
                            .overlap(&twin_fock(n as usize))
                            .expect("same sector")
                            .norm()
                    }),
                })
                .collect();
            match format {
                Format::Json => serde_json::to_string_pretty(&rows)?,
                Format::Csv => {
                    let mut out =
                        String::from("n,qubit_overlap,photon_closed_form,photon_expansion\n");
                    for r in rows {
                        out.push_str(&format!(
                            "{},{},{},{}\n",
                            r.n,
                            fmt_f64(r.qubit_overlap),
                            fmt_f64(r.photon_closed_form),
                            optional(r.photon_expansion)
                        ));
                    }
                    out
                }
            }
        }
        Quantity::Counting => {
            let rows: Vec<CountingRow> = range
                .map(|n| {
                    let exact = counting_test_error(n);
                    let asymptote = counting_test_asymptote(n);
                    CountingRow {
                        n,
                        p_error: exact,
                        asymptote,
                        relative_gap: (asymptote - exact) / exact,
                    }
                })
                .collect();
            match format {
                Format::Json => serde_json::to_string_pretty(&rows)?,
                Format::Csv => {
                    let mut out = String::from("n,p_error,asymptote,relative_gap\n");
                    for r in rows {
                        out.push_str(&format!(
                            "{},{},{},{}\n",
                            r.n,
                            fmt_f64(r.p_error),
                            fmt_f64(r.asymptote),
                            fmt_f64(r.relative_gap)
                        ));
                    }
                    out
                }
            }
        }
        Quantity::Photon => {
            let rows: Vec<PhotonRow> = range
                .map(|n| {
                    let p = photon_error(n);
                    PhotonRow {
                        n,
                        exact: p.exact,
                        exact_log10: p.exact_log10,
                        asymptote: p.asymptote,
                        asymptote_log10: p.asymptote_log10,
                    }
                })
                .collect();
            match format {
                Format::Json => serde_json::to_string_pretty(&rows)?,
                Format::Csv => {
                    let mut out =
                        String::from("n,exact,exact_log10,asymptote,asymptote_log10\n");
                    for r in rows {
                        out.push_str(&format!(
                            "{},{},{},{},{}\n",
                            r.n,
                            fmt_f64(r.exact),
                            optional(r.exact_log10),
                            optional(r.asymptote),
                            optional(r.asymptote_log10)
                        ));
                    }
                    out
                }
            }
        }
        Quantity::Distinguishable => {
            let rows: Vec<DistinguishableRow> = range
                .map(|n| {
                    let d = distinguishable_particles_error(n);
                    DistinguishableRow {
                        n,
                        exact: d.exact,
                        approx: d.approx,
                        exact_log10: d.exact_log10,
                        approx_log10: d.approx_log10,
                    }
                })
                .collect();
            match format {
                Format::Json => serde_json::to_string_pretty(&rows)?,
                Format::Csv => {
                    let mut out = String::from("n,exact,approx,exact_log10,approx_log10\n");
                    for r in rows {
                        out.push_str(&format!(
                            "{},{},{},{},{}\n",
                            r.n,
                            fmt_f64(r.exact),
                            fmt_f64(r.approx),
                            fmt_f64(r.exact_log10),
                            fmt_f64(r.approx_log10)
                        ));
                    }
                    out
                }
            }
        }
    })
}
