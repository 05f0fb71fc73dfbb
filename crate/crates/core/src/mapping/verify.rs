use super::label::Parity;
use super::md::{complement, MdParts, VectorLabeling};
use crate::metrics::neighbors::NeighborOrder;

/// Outcome of the structural checks on a mapping.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PropositionReport {
    pub width: u32,
    /// Enumerative checks were skipped because the label width exceeds the limit.
    pub guard_exceeded: bool,
    /// Both directions of each full mapping agree.
    pub tables_consistent: bool,
    /// Half mappings cover `chi_el` and its complement exactly.
    pub partition_ok: bool,
    /// Every label maps to a distinct vector and maps back to itself.
    pub bijective: Option<bool>,
    /// Largest label distance between nearest neighbours of even labels.
    pub max_neighbor_distance_even: Option<u32>,
    /// Same for odd labels.
    pub max_neighbor_distance_odd: Option<u32>,
    /// Each label's parity agrees with the half its first symbol lies in.
    pub parity_structure: Option<bool>,
    pub failures: Vec<String>,
}

impl PropositionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `m + 1`, the bound on nearest-neighbour label distance.
    pub fn neighbor_bound(&self, m: u32) -> u32 {
        m + 1
    }
}

/// Runs [`check_propositions_with_limit`] with a 20-bit enumeration limit.
pub fn check_propositions(parts: &MdParts) -> PropositionReport {
    check_propositions_with_limit(parts, 20)
}

/// Checks table consistency, bijectivity of the assembled map, the
/// nearest-neighbour label distance bound `m + 1` within the even and odd
/// label sets, and the parity structure of the first position.
pub fn check_propositions_with_limit(parts: &MdParts, limit: u32) -> PropositionReport {
    let m = parts.m;
    let n = parts.n as usize;
    let size = 1usize << m;
    let half = size / 2;
    let width = parts.width();
    let mut report = PropositionReport {
        width,
        ..Default::default()
    };

    report.tables_consistent = true;
    for (name, table) in [
        ("lambda_er", &parts.lambda_er),
        ("lambda_or", &parts.lambda_or),
    ] {
        if table.size() != size || !table.is_consistent() {
            report.tables_consistent = false;
            report.failures.push(format!(
                "{name}: label and symbol tables are not inverse bijections"
            ));
        }
    }

    let chi_ol = complement(&parts.chi_el, size);
    let el_ok = parts.lambda_el.half() == half && parts.lambda_el.symbol_set() == parts.chi_el;
    let ol_ok = parts.lambda_ol.half() == half && parts.lambda_ol.symbol_set() == chi_ol;
    report.partition_ok = el_ok && ol_ok && parts.chi_el.len() == half;
    if !el_ok {
        report
            .failures
            .push("lambda_el pair set does not cover chi_el".into());
    }
    if !ol_ok {
        report
            .failures
            .push("lambda_ol pair set does not cover the complement of chi_el".into());
    }

    if width > limit {
        report.guard_exceeded = true;
        report.failures.push(format!(
            "guard exceeded: {width} label bits, enumeration limit {limit}; partial checks only"
        ));
        return report;
    }
    if !report.partition_ok || parts.lambda_er.size() != size || parts.lambda_or.size() != size {
        report.bijective = Some(false);
        report
            .failures
            .push("bijectivity: malformed components".into());
        return report;
    }

    let count = 1usize << width;
    let mut seen = vec![false; size.pow(n as u32)];
    let mut buf = vec![0usize; n];
    let mut bijective = true;
    let mut parity_ok = true;
    for l in 0..count as u64 {
        parts.map_raw(l, &mut buf);
        let index = buf.iter().fold(0usize, |acc, &s| acc * size + s);
        if seen[index] {
            bijective = false;
        }
        seen[index] = true;
        if parts.demap_raw(&buf) != Some(l) {
            bijective = false;
        }
        let first_even = parts.chi_el.binary_search(&buf[0]).is_ok();
        if first_even != (Parity::of(l) == Parity::Even) {
            parity_ok = false;
        }
    }
    report.bijective = Some(bijective);
    report.parity_structure = Some(parity_ok);
    if !bijective {
        report
            .failures
            .push("bijectivity: the assembled map is not one-to-one with its inverse".into());
        return report;
    }
    if !parity_ok {
        report
            .failures
            .push("parity structure: label parity disagrees with the first-symbol half".into());
    }

    let constellation = match parts.constellation.scale_for_vector(parts.n) {
        Ok(c) => c,
        Err(e) => {
            report.failures.push(e.to_string());
            return report;
        }
    };
    let labeling =
        match VectorLabeling::from_fn(m, parts.n, &constellation, |l, out| parts.map_raw(l, out)) {
            Ok(v) => v,
            Err(e) => {
                report.failures.push(e.to_string());
                return report;
            }
        };
    let even = max_neighbor_label_distance(&labeling, Parity::Even);
    let odd = max_neighbor_label_distance(&labeling, Parity::Odd);
    report.max_neighbor_distance_even = Some(even);
    report.max_neighbor_distance_odd = Some(odd);
    for (name, d) in [("even", even), ("odd", odd)] {
        if d > m + 1 {
            report.failures.push(format!(
                "nearest neighbours among {name} labels differ in {d} bits, bound is {}",
                m + 1
            ));
        }
    }
    report
}

/// Largest Hamming distance between the labels of two vectors of the given
/// parity class that are at the minimum Euclidean distance of that class.
pub fn max_neighbor_label_distance(labeling: &VectorLabeling, class: Parity) -> u32 {
    let n = labeling.n() as usize;
    let order = NeighborOrder::new(labeling.constellation(), n);
    let members = (0..labeling.len()).filter(|&l| Parity::of(l as u64) == class);
    let mut dmin = f64::INFINITY;
    for x in members.clone() {
        let mut walk = order.walk(labeling.symbols(x));
        while let Some((d, v)) = walk.next_vector() {
            if d >= dmin {
                break;
            }
            let y = labeling.label_of_symbols(&v[..n]);
            if y != x && Parity::of(y as u64) == class {
                dmin = d;
                break;
            }
        }
    }
    let cutoff = dmin * (1.0 + 1e-9);
    let mut worst = 0;
    for x in members {
        let mut walk = order.walk(labeling.symbols(x));
        while let Some((d, v)) = walk.next_vector() {
            if d > cutoff {
                break;
            }
            let y = labeling.label_of_symbols(&v[..n]);
            if y != x && Parity::of(y as u64) == class {
                worst = worst.max(((x ^ y) as u64).count_ones());
            }
        }
    }
    worst
}
