//! End-to-end verification report.

use serde::Serialize;

use super::checks::{self, SimplicityReport, SubgroupResult};
use super::graph::DoubleCosetGraph;
use super::{
    construct_image, double_coset_graph, verify_identities, Check, IdentityResult, Image, ReferenceData, StageError,
};
use crate::todd_coxeter::{EnumerationOptions, Statistics, Strategy};

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationSection {
    pub strategy: Strategy,
    pub control_relators: usize,
    pub quotient_relators: usize,
    pub cosets: usize,
    pub statistics: Statistics,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSection {
    pub graph: DoubleCosetGraph,
    pub checks: Vec<Check>,
    pub letter_orbits: Vec<Check>,
    /// Where the drawn graph disagrees with the computed one.
    pub drawn_discrepancies: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub data: Vec<Check>,
    pub enumeration: EnumerationSection,
    pub image: Vec<Check>,
    pub identities: Vec<IdentityResult>,
    pub graph: GraphSection,
    pub coset_stabilizers: Vec<Check>,
    pub simplicity: SimplicityReport,
    pub symmetric_generation: Vec<Check>,
    pub janko: Vec<Check>,
    pub maximal_subgroups: Vec<SubgroupResult>,
    pub structural_pass: bool,
    pub identities_pass: bool,
}

impl Report {
    /// Failed structural checks, as `section: name`.
    pub fn structural_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let sections: [(&str, &[Check]); 7] = [
            ("data", &self.data),
            ("image", &self.image),
            ("graph", &self.graph.checks),
            ("coset stabilizers", &self.coset_stabilizers),
            ("simplicity", &self.simplicity.checks),
            ("symmetric generation", &self.symmetric_generation),
            ("janko", &self.janko),
        ];
        for (section, list) in sections {
            for c in list.iter().filter(|c| !c.passed) {
                out.push(format!("{section}: {} ({})", c.name, c.detail));
            }
        }
        // only the partition at [t1] is structural
        for c in self.graph.letter_orbits.iter().take(1).filter(|c| !c.passed) {
            out.push(format!("graph: {} ({})", c.name, c.detail));
        }
        out
    }

    /// Subgroup table rows that were read but generate the wrong order.
    pub fn subgroup_mismatches(&self) -> Vec<&SubgroupResult> {
        self.maximal_subgroups
            .iter()
            .filter(|s| s.skipped.is_none() && !s.passed)
            .collect()
    }

    /// Catalog and table findings only count with `strict`.
    pub fn passed(&self, strict: bool) -> bool {
        self.structural_pass && (!strict || (self.identities_pass && self.subgroup_mismatches().is_empty()))
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let g = &self.graph.graph;
        s.push_str(&format!(
            "enumeration: {} cosets ({} definitions, {} max live, {} coincidences)\n",
            self.enumeration.cosets,
            self.enumeration.statistics.definitions,
            self.enumeration.statistics.max_live,
            self.enumeration.statistics.coincidences
        ));
        let order = self.image.iter().find(|c| c.name == "order of <X, Y, T>");
        if let Some(c) = order {
            s.push_str(&format!("group order: {}\n", c.detail));
        }
        s.push_str(&format!("double cosets: {:?}\n", g.counts()));
        let failed_ids: Vec<&str> = self
            .identities
            .iter()
            .filter(|i| !i.passed)
            .map(|i| i.label.as_str())
            .collect();
        s.push_str(&format!(
            "identities: {} of {} hold; failing {:?}\n",
            self.identities.len() - failed_ids.len(),
            self.identities.len(),
            failed_ids
        ));
        for d in &self.graph.drawn_discrepancies {
            s.push_str(&format!("drawn graph: {d}\n"));
        }
        s.push_str(&format!(
            "simple: {} ({}: {})\n",
            self.simplicity.simple, self.simplicity.abelian.name, self.simplicity.abelian.passed
        ));
        for m in &self.maximal_subgroups {
            match &m.skipped {
                Some(r) => s.push_str(&format!("subgroup {}: skipped ({r})\n", m.name)),
                None => s.push_str(&format!(
                    "subgroup {}: order {} (expected {})\n",
                    m.name,
                    m.order.unwrap_or(0),
                    m.expected_order
                )),
            }
        }
        for f in self.structural_failures() {
            s.push_str(&format!("FAILED {f}\n"));
        }
        s.push_str(if self.structural_pass {
            "structural checks: pass\n"
        } else {
            "structural checks: FAIL\n"
        });
        s
    }
}

/// Runs every stage in order.
pub fn run_verification(data: &ReferenceData, options: &EnumerationOptions) -> Result<(Image, Report), StageError> {
    let data_checks = data.validate();
    let image = construct_image(&data.spec, options)?;
    let report = build_report(data, &image, data_checks, options.strategy);
    Ok((image, report))
}

fn build_report(data: &ReferenceData, image: &Image, data_checks: Vec<Check>, strategy: Strategy) -> Report {
    let image_checks = checks::image_checks(image);
    let identities = verify_identities(image, &data.catalog);
    let graph = double_coset_graph(image);
    let mut graph_checks = graph.invariants(image);
    let mut counts = graph.counts();
    counts.sort_unstable();
    graph_checks.push(Check::expect("node counts", counts, vec![1, 10, 32, 32, 80, 160]));
    let mut stabs: Vec<u128> = graph.nodes.iter().map(|n| n.stabilizer_order).collect();
    stabs.sort_unstable();
    graph_checks.push(Check::expect(
        "stabilizer orders",
        stabs,
        vec![12, 24, 60, 60, 192, 1920],
    ));
    let letter_orbits = checks::letter_orbit_checks(image, data);
    let drawn_discrepancies = graph.compare_drawn(image, &data.drawn);
    let coset_stabilizers = checks::verify_coset_stabilizers(image, &graph, data);
    let simplicity = checks::simplicity_suite(image);
    let symmetric_generation = checks::symmetric_generation_checks(image);
    let janko = checks::janko_check(image);
    let maximal_subgroups = checks::maximal_subgroup_orders(image, &data.subgroups);
    let mut report = Report {
        data: data_checks,
        enumeration: EnumerationSection {
            strategy,
            control_relators: image.control_relators,
            quotient_relators: image.quotient.relators().len(),
            cosets: image.degree(),
            statistics: image.stats,
        },
        image: image_checks,
        identities_pass: identities.iter().all(|i| i.passed),
        identities,
        graph: GraphSection {
            graph,
            checks: graph_checks,
            letter_orbits,
            drawn_discrepancies,
        },
        coset_stabilizers,
        simplicity,
        symmetric_generation,
        janko,
        maximal_subgroups,
        structural_pass: false,
    };
    report.structural_pass = report.structural_failures().is_empty();
    report
}
