use std::collections::BTreeMap;

use super::cover::{inverse, then};
use super::{ConstructionError, CoverSpec, Perm};

/// A word in the free group on `a, b`: letters `(generator, inverted)`,
/// generator 0 for `a` and 1 for `b`.
pub type Word = Vec<(usize, bool)>;

/// Parses `a`, `A` (= a⁻¹), `b`, `B`; the empty string and `1` are the identity.
pub fn parse_word(s: &str) -> Result<Word, ConstructionError> {
    let s = s.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    let mut w = Vec::new();
    for ch in s.chars() {
        let letter = match ch {
            'a' => (0, false),
            'A' => (0, true),
            'b' => (1, false),
            'B' => (1, true),
            _ => return Err(ConstructionError::BadWord(s.to_string())),
        };
        // free reduction as we go
        if w.last() == Some(&(letter.0, !letter.1)) {
            w.pop();
        } else {
            w.push(letter);
        }
    }
    Ok(w)
}

/// Whether `x ↦ w_a, y ↦ w_b` is an automorphism of `F(a, b)`: the images
/// must generate, i.e. the folded graph of the two loops is the one-vertex
/// rose. Surjective endomorphisms of finitely generated free groups are
/// injective.
pub fn is_automorphism(wa: &Word, wb: &Word) -> bool {
    // edges[v][(gen, inverted)] = w, kept symmetric: (v, g, false) → w iff (w, g, true) → v
    let mut edges: Vec<BTreeMap<(usize, bool), usize>> = vec![BTreeMap::new()];
    let mut alive = vec![true];
    let mut parent: Vec<usize> = vec![0];
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let add_edge = |edges: &mut Vec<BTreeMap<(usize, bool), usize>>,
                        pending: &mut Vec<(usize, usize)>,
                        v: usize,
                        l: (usize, bool),
                        w: usize| {
        for (x, letter, y) in [(v, l, w), (w, (l.0, !l.1), v)] {
            if let Some(&z) = edges[x].get(&letter) {
                if z != y {
                    pending.push((z, y));
                }
            } else {
                edges[x].insert(letter, y);
            }
        }
    };
    for word in [wa, wb] {
        if word.is_empty() {
            continue;
        }
        let mut v = 0;
        for (k, &l) in word.iter().enumerate() {
            let w = if k + 1 == word.len() {
                0
            } else {
                edges.push(BTreeMap::new());
                alive.push(true);
                parent.push(edges.len() - 1);
                edges.len() - 1
            };
            add_edge(&mut edges, &mut pending, v, l, w);
            v = w;
        }
    }
    // fold: identify vertices reached by the same letter from one vertex
    while let Some((x, y)) = pending.pop() {
        let (x, y) = (find(&mut parent, x), find(&mut parent, y));
        if x == y {
            continue;
        }
        let (keep, gone) = (x.min(y), x.max(y));
        parent[gone] = keep;
        alive[gone] = false;
        let moved = std::mem::take(&mut edges[gone]);
        for (l, t) in moved {
            let t = find(&mut parent, t);
            let t = if t == gone { keep } else { t };
            add_edge(&mut edges, &mut pending, keep, l, t);
        }
        // redirect edges pointing at `gone`
        for v in 0..edges.len() {
            if !alive[v] {
                continue;
            }
            for t in edges[v].values_mut() {
                if *t == gone {
                    *t = keep;
                }
            }
        }
    }
    let live: Vec<usize> = (0..edges.len()).filter(|&v| alive[v]).collect();
    live.len() == 1 && edges[live[0]].len() == 4
}

fn evaluate(w: &Word, spec: &CoverSpec) -> Perm {
    let mut p: Perm = (0..spec.degree()).collect();
    for &(g, inv) in w {
        let s = if g == 0 { &spec.sigma_a } else { &spec.sigma_b };
        p = if inv { then(&p, &inverse(s)) } else { then(&p, s) };
    }
    p
}

/// Isomorphism of two transitive actions of `F(a, b)` on sheets, as a
/// relabelling `π` with `π ∘ σ = τ ∘ π` for both generators.
fn actions_isomorphic(s: [&Perm; 2], t: [&Perm; 2]) -> bool {
    let d = s[0].len();
    (0..d).any(|image| {
        let mut pi: Vec<Option<usize>> = vec![None; d];
        pi[0] = Some(image);
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            let j = pi[i].expect("assigned");
            for g in 0..2 {
                for inv in [false, true] {
                    let (si, tj) = if inv {
                        (inverse(s[g])[i], inverse(t[g])[j])
                    } else {
                        (s[g][i], t[g][j])
                    };
                    match pi[si] {
                        Some(x) if x != tj => return false,
                        Some(_) => {}
                        None => {
                            pi[si] = Some(tj);
                            stack.push(si);
                        }
                    }
                }
            }
        }
        let mut hit = vec![false; d];
        pi.iter().all(|x| x.is_some_and(|x| !std::mem::replace(&mut hit[x], true)))
    })
}

/// Whether the map of the punctured torus inducing `a ↦ w_a, b ↦ w_b` on
/// the fundamental group lifts to the cover: the Schreier graphs of the
/// original and the precomposed representations must be isomorphic.
pub fn lift_check(spec: &CoverSpec, wa: &Word, wb: &Word) -> Result<bool, ConstructionError> {
    if !spec.is_transitive() {
        return Err(ConstructionError::NotTransitive);
    }
    if !is_automorphism(wa, wb) {
        return Err(ConstructionError::NotAutomorphism);
    }
    let ta = evaluate(wa, spec);
    let tb = evaluate(wb, spec);
    Ok(actions_isomorphic([&spec.sigma_a, &spec.sigma_b], [&ta, &tb]))
}
