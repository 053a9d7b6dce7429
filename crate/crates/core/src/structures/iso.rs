//! Isomorphism search for small vertex-coloured, edge-labelled digraphs.
//!
//! Modules and DD structures both reduce to this shape: generators carry
//! idempotent data, and actions or arrows are labelled edges. Sizes here
//! are at most a few dozen vertices, so plain backtracking over
//! signature-compatible candidates is enough.

use std::collections::{BTreeMap, BTreeSet};

pub(crate) struct LabelledGraph<C, L> {
    pub colors: Vec<C>,
    pub edges: Vec<(usize, L, usize)>,
}

struct Indexed<'a, C, L> {
    colors: &'a [C],
    between: BTreeMap<(usize, usize), Vec<&'a L>>,
    signature: Vec<(&'a C, Vec<&'a L>, Vec<&'a L>)>,
}

impl<'a, C: Ord, L: Ord> Indexed<'a, C, L> {
    fn new(g: &'a LabelledGraph<C, L>) -> Self {
        let n = g.colors.len();
        let mut between: BTreeMap<(usize, usize), Vec<&L>> = BTreeMap::new();
        let mut outs = vec![Vec::new(); n];
        let mut ins = vec![Vec::new(); n];
        for (s, l, t) in &g.edges {
            between.entry((*s, *t)).or_default().push(l);
            outs[*s].push(l);
            ins[*t].push(l);
        }
        for v in between.values_mut() {
            v.sort();
        }
        let signature = (0..n)
            .map(|v| {
                let mut o = std::mem::take(&mut outs[v]);
                let mut i = std::mem::take(&mut ins[v]);
                o.sort();
                i.sort();
                (&g.colors[v], o, i)
            })
            .collect();
        Self {
            colors: &g.colors,
            between,
            signature,
        }
    }

    fn labels(&self, s: usize, t: usize) -> &[&'a L] {
        self.between.get(&(s, t)).map_or(&[], |v| v.as_slice())
    }
}

/// Finds `f` with `f[v]` the image in `b` of vertex `v` of `a`, preserving
/// colours and labelled edge multisets.
pub(crate) fn find_isomorphism<C: Ord, L: Ord>(
    a: &LabelledGraph<C, L>,
    b: &LabelledGraph<C, L>,
) -> Option<Vec<usize>> {
    if a.colors.len() != b.colors.len() || a.edges.len() != b.edges.len() {
        return None;
    }
    let ia = Indexed::new(a);
    let ib = Indexed::new(b);
    let mut sa: Vec<_> = ia.signature.iter().collect();
    let mut sb: Vec<_> = ib.signature.iter().collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }

    // Vertices with rare signatures first.
    let mut order: Vec<usize> = (0..a.colors.len()).collect();
    let class_size = |v: usize| {
        ib.signature
            .iter()
            .filter(|s| **s == ia.signature[v])
            .count()
    };
    order.sort_by_key(|&v| (class_size(v), v));

    let mut map = vec![usize::MAX; a.colors.len()];
    let mut used = BTreeSet::new();
    if extend(&ia, &ib, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend<C: Ord, L: Ord>(
    a: &Indexed<C, L>,
    b: &Indexed<C, L>,
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut BTreeSet<usize>,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..b.colors.len() {
        if used.contains(&w) || b.signature[w] != a.signature[v] {
            continue;
        }
        map[v] = w;
        let consistent = order[..=depth].iter().all(|&u| {
            a.labels(v, u) == b.labels(w, map[u]) && a.labels(u, v) == b.labels(map[u], w)
        });
        if consistent {
            used.insert(w);
            if extend(a, b, order, depth + 1, map, used) {
                return true;
            }
            used.remove(&w);
        }
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, shift: usize) -> LabelledGraph<u8, u8> {
        LabelledGraph {
            colors: vec![0; n],
            edges: (0..n)
                .map(|i| ((i + shift) % n, 1, (i + shift + 1) % n))
                .collect(),
        }
    }

    #[test]
    fn rotated_cycles_match() {
        let f = find_isomorphism(&cycle(5, 0), &cycle(5, 2)).unwrap();
        let mut seen = f.clone();
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn label_mismatch_is_detected() {
        let mut b = cycle(4, 0);
        b.edges[0].1 = 2;
        assert!(find_isomorphism(&cycle(4, 0), &b).is_none());
    }

    #[test]
    fn two_triangles_differ_from_hexagon() {
        let a = cycle(6, 0);
        let mut b = LabelledGraph {
            colors: vec![0; 6],
            edges: Vec::new(),
        };
        for base in [0, 3] {
            for i in 0..3 {
                b.edges.push((base + i, 1, base + (i + 1) % 3));
            }
        }
        assert!(find_isomorphism(&a, &b).is_none());
    }
}
