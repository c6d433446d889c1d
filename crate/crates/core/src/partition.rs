//! Per-component time partitions and synchronized time slabs.
//!
//! Each component i subdivides (0, T] into M_i equal steps. Node times are
//! tracked as exact rationals j/M_i of the final time, and the f64 time of a
//! node is always computed from the reduced fraction. Nodes that coincide as
//! rationals are therefore bit-identical as floats, synchronized levels are
//! hit exactly, and the internal-node sets of every element are exact.

use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Exact nonnegative rational, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Frac {
    pub num: u64,
    pub den: u64,
}

impl Frac {
    pub fn new(num: u64, den: u64) -> Self {
        debug_assert!(den > 0);
        let g = gcd(num.max(1), den);
        let g = if num == 0 { den } else { g };
        Frac {
            num: num / g,
            den: den / g,
        }
    }

    /// Canonical time of the fraction within [0, T]. Equal fractions always
    /// produce bit-identical floats because the computation only sees the
    /// reduced numerator and denominator.
    pub fn time(self, total: f64) -> f64 {
        (self.num as f64) * total / (self.den as f64)
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Positive rational step multiplier, e.g. 1, 1/2, 1/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidConfig("step ratio must be positive".into()));
        }
        let g = gcd(num, den);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn numer(self) -> u64 {
        self.num
    }

    pub fn denom(self) -> u64 {
        self.den
    }

    /// Parse "1", "1/2", or a decimal like "0.25" into an exact ratio.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |_| Error::InvalidConfig(format!("cannot parse ratio {s:?}"));
        if let Some((a, b)) = s.split_once('/') {
            let num: u64 = a.trim().parse().map_err(bad)?;
            let den: u64 = b.trim().parse().map_err(bad)?;
            return Ratio::new(num, den);
        }
        if let Some((int, frac)) = s.split_once('.') {
            let digits = frac.len() as u32;
            if digits > 18 {
                return Err(Error::InvalidConfig(format!("ratio {s:?} too precise")));
            }
            let scale = 10u64.pow(digits);
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.trim().parse().map_err(bad)?
            };
            let frac: u64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(bad)?
            };
            return Ratio::new(int * scale + frac, scale);
        }
        let num: u64 = s.trim().parse().map_err(bad)?;
        Ratio::new(num, 1)
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Per-component step rule: component i uses the constant step
/// `base_step * ratios[i]` over the whole interval.
#[derive(Debug, Clone)]
pub struct StepSpec {
    pub base_step: f64,
    pub ratios: Vec<Ratio>,
}

impl StepSpec {
    pub fn uniform(n: usize, step: f64) -> Self {
        StepSpec {
            base_step: step,
            ratios: vec![Ratio::ONE; n],
        }
    }

    pub fn with_ratios(base_step: f64, ratios: Vec<Ratio>) -> Self {
        StepSpec { base_step, ratios }
    }
}

/// Which element to select when a query time lands exactly on a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Element ending at the node (left-continuous convention).
    Left,
    /// Element starting at the node.
    Right,
}

/// Node sequences for every component, with exact rational bookkeeping.
#[derive(Debug, Clone)]
pub struct ComponentPartition {
    total_time: f64,
    element_counts: Vec<usize>,
    nodes: Vec<Vec<f64>>,
    node_fracs: Vec<Vec<Frac>>,
    alpha: f64,
    slab_count: usize,
}

impl ComponentPartition {
    pub fn dim(&self) -> usize {
        self.element_counts.len()
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn element_count(&self, component: usize) -> usize {
        self.element_counts[component]
    }

    /// Node times of one component, `element_count + 1` entries from 0 to T.
    pub fn nodes(&self, component: usize) -> &[f64] {
        &self.nodes[component]
    }

    /// Constant step of one component (T / M_i).
    pub fn step(&self, component: usize) -> f64 {
        self.total_time / self.element_counts[component] as f64
    }

    /// Semiuniformity ratio: min over slabs of (min step / max step).
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn slab_count(&self) -> usize {
        self.slab_count
    }

    /// Bounds (t_left, t_right] of one element.
    pub fn element_interval(&self, component: usize, element: usize) -> (f64, f64) {
        (
            self.nodes[component][element],
            self.nodes[component][element + 1],
        )
    }

    /// Index of the element whose interval contains `t` under the given
    /// node-side convention. Callers must keep t within [0, T].
    pub fn element_index(&self, component: usize, t: f64, side: Side) -> usize {
        let nodes = &self.nodes[component];
        let m = self.element_counts[component];
        if t <= nodes[0] {
            return 0;
        }
        let pos = nodes.partition_point(|&x| x < t);
        if pos >= nodes.len() {
            return m - 1;
        }
        if nodes[pos] == t {
            match side {
                Side::Left => pos - 1,
                Side::Right => pos.min(m - 1),
            }
        } else {
            pos - 1
        }
    }

    pub(crate) fn node_frac(&self, component: usize, node: usize) -> Frac {
        self.node_fracs[component][node]
    }
}

/// One element reference inside a time slab.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementRef {
    pub component: usize,
    pub element: usize,
}

/// All elements between two synchronized time levels.
#[derive(Debug, Clone)]
pub struct TimeSlab {
    pub index: usize,
    pub start: f64,
    pub end: f64,
    /// Elements ordered by right endpoint, ties broken by component index.
    pub elements: Vec<ElementRef>,
    /// For each element (aligned with `elements`): the node times of other
    /// components strictly inside the element's interval.
    pub internal_nodes: Vec<Vec<f64>>,
}

impl TimeSlab {
    pub fn length(&self) -> f64 {
        self.end - self.start
    }
}

const MAX_TOTAL_ELEMENTS: u64 = 20_000_000;

/// Build the per-component partition and its time slabs.
///
/// Each component's step must tile [0, T]: T / (base_step * ratio) has to be
/// an integer (within 1e-9 relative slack; the realized step is T / M_i).
pub fn build_partition(
    spec: &StepSpec,
    total_time: f64,
) -> Result<(ComponentPartition, Vec<TimeSlab>)> {
    if spec.ratios.is_empty() {
        return Err(Error::InvalidProblem("zero components".into()));
    }
    if !(total_time > 0.0) || !total_time.is_finite() {
        return Err(Error::InvalidProblem(format!(
            "final time {total_time} must be positive"
        )));
    }
    if !(spec.base_step > 0.0) || !spec.base_step.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "base step {} must be positive",
            spec.base_step
        )));
    }

    let n = spec.ratios.len();
    let mut counts = Vec::with_capacity(n);
    let mut total_elems: u64 = 0;
    for (i, r) in spec.ratios.iter().enumerate() {
        let step = spec.base_step * r.as_f64();
        let exact = total_time / step;
        let m = exact.round();
        if m < 1.0 || (exact - m).abs() > 1e-9 * m.max(1.0) {
            return Err(Error::NonTilingStep {
                component: i,
                slab: 0,
                step,
                total_time,
            });
        }
        let m = m as u64;
        total_elems += m;
        if total_elems > MAX_TOTAL_ELEMENTS {
            return Err(Error::InvalidConfig(format!(
                "partition too fine: more than {MAX_TOTAL_ELEMENTS} elements"
            )));
        }
        counts.push(m);
    }

    let mut nodes = Vec::with_capacity(n);
    let mut fracs = Vec::with_capacity(n);
    for &m in &counts {
        let mut comp_nodes = Vec::with_capacity(m as usize + 1);
        let mut comp_fracs = Vec::with_capacity(m as usize + 1);
        for j in 0..=m {
            let f = Frac::new(j, m);
            comp_fracs.push(f);
            comp_nodes.push(f.time(total_time));
        }
        for j in 0..m as usize {
            if !(comp_nodes[j] < comp_nodes[j + 1]) {
                return Err(Error::InvalidConfig(format!(
                    "node times not strictly increasing for a component with {m} elements"
                )));
            }
        }
        debug_assert_eq!(*comp_nodes.last().unwrap(), total_time);
        nodes.push(comp_nodes);
        fracs.push(comp_fracs);
    }

    let slab_count = counts.iter().fold(0u64, |g, &m| gcd(g, m)) as usize;

    // elements per slab for each component
    let per_slab: Vec<usize> = counts
        .iter()
        .map(|&m| (m as usize) / slab_count)
        .collect();

    let mut alpha = f64::INFINITY;
    let mut slabs = Vec::with_capacity(slab_count);
    for sl in 0..slab_count {
        let start = Frac::new(sl as u64, slab_count as u64).time(total_time);
        let end = Frac::new(sl as u64 + 1, slab_count as u64).time(total_time);

        let mut elems: Vec<(Frac, usize, usize)> = Vec::new();
        for i in 0..n {
            for local in 0..per_slab[i] {
                let j = sl * per_slab[i] + local;
                elems.push((fracs[i][j + 1], i, j));
            }
        }
        elems.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let elements: Vec<ElementRef> = elems
            .iter()
            .map(|&(_, component, element)| ElementRef { component, element })
            .collect();

        let mut internal_nodes = Vec::with_capacity(elements.len());
        for e in &elements {
            let lo = fracs[e.component][e.element];
            let hi = fracs[e.component][e.element + 1];
            let mut inside: BTreeSet<Frac> = BTreeSet::new();
            for (l, &ml) in counts.iter().enumerate() {
                if l == e.component {
                    continue;
                }
                // candidate nodes r/ml with lo < r/ml < hi
                let r_from = (lo.num as u128 * ml as u128 / lo.den as u128) as u64;
                let r_to =
                    ((hi.num as u128 * ml as u128).div_ceil(hi.den as u128)) as u64;
                for r in r_from..=r_to.min(ml) {
                    let f = Frac::new(r, ml);
                    if lo < f && f < hi {
                        inside.insert(f);
                    }
                }
            }
            internal_nodes.push(inside.iter().map(|f| f.time(total_time)).collect());
        }

        let steps: Vec<f64> = (0..n).map(|i| total_time / counts[i] as f64).collect();
        let min_step = steps.iter().cloned().fold(f64::INFINITY, f64::min);
        let max_step = steps.iter().cloned().fold(0.0, f64::max);
        alpha = alpha.min(min_step / max_step);

        slabs.push(TimeSlab {
            index: sl,
            start,
            end,
            elements,
            internal_nodes,
        });
    }

    let partition = ComponentPartition {
        total_time,
        element_counts: counts.iter().map(|&m| m as usize).collect(),
        nodes,
        node_fracs: fracs,
        alpha,
        slab_count,
    };
    Ok((partition, slabs))
}
