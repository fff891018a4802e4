use serde::Serialize;

use super::RepairScheme;
use crate::gf::SubfieldBasis;

/// Bandwidth and reads at one helper. `node` and `read_positions` are
/// 0-based here; every rendering shifts them to 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperCost {
    pub node: usize,
    pub bandwidth: usize,
    pub reads: usize,
    pub read_positions: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub target: usize,
    pub helpers: Vec<HelperCost>,
    pub total_bandwidth: usize,
    pub total_reads: usize,
}

#[derive(Serialize)]
struct HelperOut {
    helper: usize,
    bandwidth: usize,
    reads: usize,
    read_positions: Vec<usize>,
}

#[derive(Serialize)]
struct ReportOut {
    jstar: usize,
    helpers: Vec<HelperOut>,
    total_bandwidth: usize,
    total_reads: usize,
}

impl CostReport {
    pub(super) fn build<'a>(
        scheme: &RepairScheme,
        basis_of: impl Fn(usize) -> &'a SubfieldBasis,
    ) -> Self {
        let helpers: Vec<HelperCost> = scheme
            .helpers()
            .map(|j| {
                let read_positions = scheme.read_positions(j, basis_of(j));
                HelperCost {
                    node: j,
                    bandwidth: scheme.column_dim(j),
                    reads: read_positions.len(),
                    read_positions,
                }
            })
            .collect();
        CostReport {
            target: scheme.target(),
            total_bandwidth: helpers.iter().map(|h| h.bandwidth).sum(),
            total_reads: helpers.iter().map(|h| h.reads).sum(),
            helpers,
        }
    }

    fn out(&self) -> ReportOut {
        ReportOut {
            jstar: self.target + 1,
            helpers: self
                .helpers
                .iter()
                .map(|h| HelperOut {
                    helper: h.node + 1,
                    bandwidth: h.bandwidth,
                    reads: h.reads,
                    read_positions: h.read_positions.iter().map(|p| p + 1).collect(),
                })
                .collect(),
            total_bandwidth: self.total_bandwidth,
            total_reads: self.total_reads,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.out()).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("helper,bandwidth,reads,read_positions\n");
        for h in &self.helpers {
            let pos: Vec<String> = h
                .read_positions
                .iter()
                .map(|p| (p + 1).to_string())
                .collect();
            s.push_str(&format!(
                "{},{},{},{}\n",
                h.node + 1,
                h.bandwidth,
                h.reads,
                pos.join(";")
            ));
        }
        s
    }

    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 4]> = self
            .helpers
            .iter()
            .map(|h| {
                let pos: Vec<String> = h
                    .read_positions
                    .iter()
                    .map(|p| (p + 1).to_string())
                    .collect();
                [
                    (h.node + 1).to_string(),
                    h.bandwidth.to_string(),
                    h.reads.to_string(),
                    format!("{{{}}}", pos.join(",")),
                ]
            })
            .collect();
        let header = ["helper", "bandwidth", "reads", "read_positions"];
        let mut width = header.map(str::len);
        for r in &rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: [&str; 4]| {
            format!(
                "{:>w0$}  {:>w1$}  {:>w2$}  {:<w3$}",
                cells[0],
                cells[1],
                cells[2],
                cells[3],
                w0 = width[0],
                w1 = width[1],
                w2 = width[2],
                w3 = width[3]
            )
            .trim_end()
            .to_string()
        };
        let mut s = format!("repair of node {}\n", self.target + 1);
        s.push_str(&line(header));
        s.push('\n');
        for r in &rows {
            s.push_str(&line([&r[0], &r[1], &r[2], &r[3]]));
            s.push('\n');
        }
        s.push_str(&format!(
            "total bandwidth {}, total reads {}\n",
            self.total_bandwidth, self.total_reads
        ));
        s
    }
}
