//! Brute-force recomputation of the benchmark pipeline.
//!
//! Deliberately naive: string sets, explicit joint distributions, no
//! bitsets and nothing imported from the crates under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::Path;

pub struct Dag {
    pub terms: BTreeSet<String>,
    pub parents: BTreeMap<String, Vec<String>>,
    pub root: String,
    anc: BTreeMap<String, BTreeSet<String>>,
}

/// Reads `id:` and `is_a:` lines of `[Term]` stanzas.
pub fn read_obo(path: &Path) -> Dag {
    let text = std::fs::read_to_string(path).unwrap();
    let mut terms = BTreeSet::new();
    let mut parents: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut current: Option<String> = None;
    let mut in_term = false;
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('[') {
            in_term = line == "[Term]";
            current = None;
            continue;
        }
        if !in_term {
            continue;
        }
        if let Some(id) = line.strip_prefix("id:") {
            let id = id.trim().to_string();
            terms.insert(id.clone());
            parents.entry(id.clone()).or_default();
            current = Some(id);
        } else if let Some(p) = line.strip_prefix("is_a:") {
            let p = p.split('!').next().unwrap().trim().to_string();
            parents.get_mut(current.as_ref().unwrap()).unwrap().push(p);
        }
    }
    let roots: Vec<&String> = terms.iter().filter(|t| parents[*t].is_empty()).collect();
    assert_eq!(roots.len(), 1);
    let root = roots[0].clone();
    let mut dag = Dag {
        terms,
        parents,
        root,
        anc: BTreeMap::new(),
    };
    dag.anc = dag
        .terms
        .iter()
        .map(|t| (t.clone(), dag.walk_up(t)))
        .collect();
    dag
}

impl Dag {
    pub fn ancestors(&self, t: &str) -> &BTreeSet<String> {
        &self.anc[t]
    }

    fn walk_up(&self, t: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![t.to_string()];
        while let Some(x) = stack.pop() {
            if seen.insert(x.clone()) {
                stack.extend(self.parents[&x].iter().cloned());
            }
        }
        seen
    }

    pub fn descendants(&self, t: &str) -> BTreeSet<String> {
        self.terms
            .iter()
            .filter(|x| x.as_str() != t && self.ancestors(x).contains(t))
            .cloned()
            .collect()
    }

    pub fn depth(&self, t: &str) -> usize {
        let mut dist: BTreeMap<String, usize> = BTreeMap::new();
        let mut q = VecDeque::from([(self.root.clone(), 0)]);
        while let Some((x, d)) = q.pop_front() {
            if dist.contains_key(&x) {
                continue;
            }
            dist.insert(x.clone(), d);
            for (c, ps) in &self.parents {
                if ps.contains(&x) {
                    q.push_back((c.clone(), d + 1));
                }
            }
        }
        dist[t]
    }

    /// Entropy of the max-entropy pair distribution after excluding `z`
    /// and its ancestors; `None` excludes nothing.
    pub fn entropy_excluding(&self, z: Option<&str>) -> f64 {
        let excluded = z.map(|z| self.ancestors(z).clone()).unwrap_or_default();
        let xs: Vec<&String> = self
            .terms
            .iter()
            .filter(|x| !excluded.contains(*x) || **x == self.root)
            .collect();
        let mut h = 0.0;
        for x in &xs {
            let related: BTreeSet<String> = self
                .ancestors(x)
                .union(&self.descendants(x))
                .cloned()
                .collect();
            let ys = self
                .terms
                .iter()
                .filter(|y| **y == self.root || (!related.contains(*y) && !excluded.contains(*y)))
                .count();
            for _ in 0..ys {
                let p = 1.0 / xs.len() as f64 / ys as f64;
                h -= p * p.ln();
            }
        }
        h / std::f64::consts::LN_2
    }
}

/// Raw IC per term; `None` marks an undefined value.
pub type Raw = BTreeMap<String, Option<f64>>;

pub fn gic(d: &Dag) -> Raw {
    let h = d.entropy_excluding(None);
    d.terms
        .iter()
        .map(|z| (z.clone(), Some((h - d.entropy_excluding(Some(z))) / h)))
        .collect()
}

pub fn sic(d: &Dag) -> Raw {
    let n = d.terms.len() as f64;
    d.terms
        .iter()
        .map(|t| {
            let k = d.descendants(t).len() as f64;
            (t.clone(), Some(1.0 - (k + 1.0).ln() / n.ln()))
        })
        .collect()
}

/// Gene → retained direct terms.
pub fn read_corpus(d: &Dag, path: &Path, min_depth: usize) -> BTreeMap<String, BTreeSet<String>> {
    let mut genes: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for line in std::fs::read_to_string(path).unwrap().lines() {
        let (g, t) = line.split_once('\t').unwrap();
        if d.terms.contains(t) && d.depth(t) >= min_depth {
            genes
                .entry(g.to_string())
                .or_default()
                .insert(t.to_string());
        }
    }
    genes
}

pub fn ric(d: &Dag, genes: &BTreeMap<String, BTreeSet<String>>) -> Raw {
    let total = genes.len() as f64;
    d.terms
        .iter()
        .map(|t| {
            let hits = genes
                .values()
                .filter(|ts| ts.iter().any(|x| d.ancestors(x).contains(t)))
                .count();
            let v = (hits > 0).then(|| -(hits as f64 / total).log2());
            (t.clone(), v)
        })
        .collect()
}

pub fn normalize(raw: &Raw) -> BTreeMap<String, f64> {
    let max = raw.values().flatten().fold(0.0f64, |a, &b| a.max(b));
    raw.iter()
        .filter_map(|(t, v)| v.map(|v| (t.clone(), if max > 0.0 { v / max } else { 0.0 })))
        .collect()
}

pub fn simmax(
    d: &Dag,
    ic: &BTreeMap<String, f64>,
    g1: &BTreeSet<String>,
    g2: &BTreeSet<String>,
) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for a in g1 {
        for b in g2 {
            let aa = d.ancestors(a);
            for c in aa.intersection(d.ancestors(b)) {
                if let Some(&v) = ic.get(c) {
                    best = best.max(v);
                }
            }
        }
    }
    best
}

pub fn read_bitscores(path: &Path) -> BTreeMap<(String, String), f64> {
    let mut m: BTreeMap<(String, String), f64> = BTreeMap::new();
    for line in std::fs::read_to_string(path).unwrap().lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        let v: f64 = f[2].parse().unwrap();
        let e = m.entry((f[0].to_string(), f[1].to_string())).or_insert(v);
        *e = e.max(v);
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub range: f64,
    pub min: f64,
    pub max: f64,
    pub r2: f64,
    pub bins: usize,
    pub excluded_identical: usize,
    pub pairs: usize,
}

fn bin_means(pairs: &[(f64, f64)], size: usize) -> Vec<(f64, f64)> {
    pairs
        .chunks(size)
        .map(|c| {
            let n = c.len() as f64;
            (
                c.iter().map(|p| p.0).sum::<f64>() / n,
                c.iter().map(|p| p.1).sum::<f64>() / n,
            )
        })
        .collect()
}

pub fn r_squared(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let ss_res: f64 = pts.iter().map(|p| (p.1 - icpt - slope * p.0).powi(2)).sum();
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    }
}

pub fn benchmark(dir: &Path, metric: &str, bin_size: usize, min_depth: usize) -> Summary {
    let d = read_obo(&dir.join("bench.obo"));
    let genes = read_corpus(&d, &dir.join("bench_annotations.tsv"), min_depth);
    let raw = match metric {
        "gic" => gic(&d),
        "sic" => sic(&d),
        "ric" => ric(&d, &genes),
        _ => panic!("metric"),
    };
    let ic = normalize(&raw);
    let bits = read_bitscores(&dir.join("bench_bitscores.tsv"));

    let mut pairs: Vec<(f64, f64, String, String)> = Vec::new();
    let ids: BTreeSet<&String> = bits.keys().flat_map(|(a, b)| [a, b]).collect();
    for a in &ids {
        for b in &ids {
            if a >= b {
                continue;
            }
            let get = |x: &String, y: &String| bits.get(&(x.clone(), y.clone())).copied();
            let (Some(ab), Some(ba), Some(aa), Some(bb)) =
                (get(a, b), get(b, a), get(a, a), get(b, b))
            else {
                continue;
            };
            let (Some(ga), Some(gb)) = (genes.get(*a), genes.get(*b)) else {
                continue;
            };
            pairs.push((
                (ab + ba) / (aa + bb),
                simmax(&d, &ic, ga, gb),
                a.to_string(),
                b.to_string(),
            ));
        }
    }
    pairs.sort_by(|x, y| {
        x.0.partial_cmp(&y.0)
            .unwrap()
            .then(x.1.partial_cmp(&y.1).unwrap())
            .then((&x.2, &x.3).cmp(&(&y.2, &y.3)))
    });
    let xy: Vec<(f64, f64)> = pairs.iter().map(|p| (p.0, p.1)).collect();
    let bins = bin_means(&xy, bin_size);
    let kept: Vec<(f64, f64)> = xy
        .iter()
        .copied()
        .filter(|p| (p.0 - 1.0).abs() > 1e-12)
        .collect();
    let reg = bin_means(&kept, bin_size);
    let min = bins[0].1;
    let max = bins[bins.len() - 1].1;
    Summary {
        range: max - min,
        min,
        max,
        r2: r_squared(&reg),
        bins: bins.len(),
        excluded_identical: xy.len() - kept.len(),
        pairs: xy.len(),
    }
}
