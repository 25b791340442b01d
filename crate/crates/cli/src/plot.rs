//! Plot-ready aggregates of sweep records.

use crate::records::{fmt17, ResultRecord};
use crate::Result;
use std::collections::BTreeMap;
use std::path::Path;

/// Key wrapper so f64 coordinates can index a sorted map.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0)
    }
}

fn write_max_by(path: &Path, axis: &str, records: &[ResultRecord], key: impl Fn(&ResultRecord) -> f64) -> Result<()> {
    let mut m: BTreeMap<(u64, Key), (f64, usize)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.ratio.is_finite()) {
        let e = m.entry((r.q, Key(key(r)))).or_insert((0.0, 0));
        e.0 = e.0.max(r.ratio);
        e.1 += 1;
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["q", axis, "max_ratio", "rows"])?;
    for ((q, k), (v, c)) in m {
        w.write_record([q.to_string(), fmt17(k.0), fmt17(v), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `ratio_vs_n.csv`, `ratio_vs_t.csv` and `ratio_vs_y.csv`: the maximum
/// ratio per level and axis value. No records gives header-only files.
pub fn emit_plot_data(records: &[ResultRecord], out: &Path) -> Result<()> {
    std::fs::create_dir_all(out)?;
    write_max_by(&out.join("ratio_vs_n.csv"), "n", records, |r| r.n as f64)?;
    write_max_by(&out.join("ratio_vs_t.csv"), "t", records, |r| r.t)?;
    write_max_by(&out.join("ratio_vs_y.csv"), "y", records, |r| r.y)?;
    Ok(())
}
