//! Text tables and CSV emission. All floating-point output goes through
//! [`fmt9`] (nine significant digits) so files are byte-stable across runs
//! and platforms.

use qutrit_msd_core::distill::ScanRow;
use qutrit_msd_core::search::{AtlasEntry, HitClass};
use qutrit_msd_core::wigner::WignerTable;
use std::io::Write;

/// Nine significant digits, scientific.
pub fn fmt9(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    format!("{v:.8e}")
}

pub fn wigner_table_text(w: &WignerTable) -> String {
    let mut s = String::new();
    s.push_str("W(x,z)      z=0           z=1           z=2\n");
    for x in 0..3 {
        s.push_str(&format!(
            "x={x}   {:>13} {:>13} {:>13}\n",
            fmt9(w.get(x, 0)),
            fmt9(w.get(x, 1)),
            fmt9(w.get(x, 2))
        ));
    }
    s
}

pub fn wigner_csv(w: &WignerTable, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "x,z,value")?;
    for x in 0..3 {
        for z in 0..3 {
            writeln!(out, "{x},{z},{}", fmt9(w.get(x, z)))?;
        }
    }
    Ok(())
}

pub const SCAN_CSV_HEADER: &str = "coord1,coord2,class,fidelity,p_succ";

pub fn scan_csv(rows: &[ScanRow], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{SCAN_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt9(r.coord1),
            fmt9(r.coord2),
            r.class.as_str(),
            fmt9(r.fidelity),
            fmt9(r.p_succ)
        )?;
    }
    Ok(())
}

pub const ATLAS_CSV_HEADER: &str = "code_id,fixed_point_class,theta,phi,r,sum_negativity";

/// Atlas of magic limiting states: one row per non-stabilizer fixed point.
/// Stabilizer fixed points (every code has at least 𝟙/3, and some codes
/// fix whole stabilizer families) are left out of the figure data.
pub fn atlas_csv(entries: &[AtlasEntry], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{ATLAS_CSV_HEADER}")?;
    for e in entries {
        for h in e.hits.iter().filter(|h| h.class != HitClass::Stabilizer) {
            let (theta, phi, r) = match &h.point {
                Some(p) => (fmt9(p.theta), fmt9(p.phi), fmt9(p.r)),
                None => ("nan".into(), "nan".into(), "nan".into()),
            };
            writeln!(
                out,
                "{},{},{theta},{phi},{r},{}",
                e.code_id,
                h.class.as_str(),
                fmt9(h.sum_negativity)
            )?;
        }
    }
    Ok(())
}
