//! Edge-path presentations of the fundamental group and a bounded Tietze-style
//! simplifier. The simplifier can only ever certify triviality; failing to reduce
//! the presentation says nothing.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::DirectedComplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("the 1-skeleton is disconnected")]
    Disconnected,
}

/// A generator index with exponent +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    fn inv(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    /// Generator names (the non-tree edge ids).
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Triviality {
    CertifiedTrivial,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalGroupReport {
    pub presentation: Presentation,
    pub status: Triviality,
    /// Generators still alive when the simplifier stopped.
    pub remaining_generators: Vec<String>,
    pub remaining_relators: usize,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SimplifyBudget {
    pub max_steps: usize,
    pub max_total_length: usize,
}

impl Default for SimplifyBudget {
    fn default() -> Self {
        SimplifyBudget {
            max_steps: 10_000,
            max_total_length: 200_000,
        }
    }
}

/// Generators are the edges outside a BFS spanning tree of the 1-skeleton, relators
/// are the face boundary words.
pub fn presentation(c: &DirectedComplex) -> Result<Presentation, HomotopyError> {
    let skeleton = c.one_skeleton();
    if !skeleton.is_connected() {
        return Err(HomotopyError::Disconnected);
    }
    let tree = skeleton.spanning_forest();
    let mut gen_of_edge = vec![None; c.edge_count()];
    let mut generators = Vec::new();
    for (e, &t) in tree.iter().enumerate() {
        if !t {
            gen_of_edge[e] = Some(generators.len());
            generators.push(c.edge(e).id.clone());
        }
    }
    let relators = c
        .faces()
        .iter()
        .map(|f| {
            (0..3)
                .filter_map(|i| {
                    gen_of_edge[f.edges[i]].map(|g| Letter {
                        generator: g,
                        inverse: f.signs[i] < 0,
                    })
                })
                .collect()
        })
        .collect();
    Ok(Presentation { generators, relators })
}

fn reduce(word: &mut Vec<Letter>) {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word.iter() {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic reduction
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == out[end - 1].inv() {
        start += 1;
        end -= 1;
    }
    *word = out[start..end].to_vec();
}

fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inv()).collect()
}

/// Runs the bounded simplifier on a presentation.
pub fn simplify(p: &Presentation, budget: SimplifyBudget) -> FundamentalGroupReport {
    let mut alive = vec![true; p.generators.len()];
    let mut rels: Vec<Vec<Letter>> = p.relators.clone();
    let mut steps = 0;
    let status = loop {
        for r in rels.iter_mut() {
            reduce(r);
        }
        rels.retain(|r| !r.is_empty());
        rels.sort();
        rels.dedup();
        if alive.iter().all(|a| !a) {
            break Triviality::CertifiedTrivial;
        }
        if steps >= budget.max_steps || rels.iter().map(Vec::len).sum::<usize>() > budget.max_total_length {
            break Triviality::Unknown;
        }
        steps += 1;
        // a generator occurring exactly once in some relator can be eliminated
        let mut best: Option<(usize, usize, usize)> = None; // (len, relator, position)
        for (ri, r) in rels.iter().enumerate() {
            for (pos, l) in r.iter().enumerate() {
                let occurrences = r.iter().filter(|x| x.generator == l.generator).count();
                if occurrences == 1 && best.is_none_or(|(len, _, _)| r.len() < len) {
                    best = Some((r.len(), ri, pos));
                }
            }
        }
        let Some((_, ri, pos)) = best else {
            break Triviality::Unknown;
        };
        let r = rels.remove(ri);
        let letter = r[pos];
        // r rotated so that `letter` comes first: letter * rest = 1
        let rest: Vec<Letter> = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        // g^e = rest^-1  =>  g = rest^-1 (e = +1) or g = rest (e = -1)
        let image = if letter.inverse { rest.clone() } else { invert(&rest) };
        let image_inv = invert(&image);
        for other in rels.iter_mut() {
            let mut next = Vec::with_capacity(other.len());
            for &l in other.iter() {
                if l.generator == letter.generator {
                    next.extend_from_slice(if l.inverse { &image_inv } else { &image });
                } else {
                    next.push(l);
                }
            }
            *other = next;
        }
        alive[letter.generator] = false;
    };
    FundamentalGroupReport {
        presentation: p.clone(),
        status,
        remaining_generators: p
            .generators
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(g, _)| g.clone())
            .collect(),
        remaining_relators: rels.len(),
        steps,
    }
}

pub fn fundamental_group_report(c: &DirectedComplex) -> Result<FundamentalGroupReport, HomotopyError> {
    Ok(simplify(&presentation(c)?, SimplifyBudget::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{validate, RawComplex};

    fn letter(g: usize, inverse: bool) -> Letter {
        Letter { generator: g, inverse }
    }

    #[test]
    fn free_and_cyclic_reduction() {
        let mut w = vec![letter(0, false), letter(1, false), letter(1, true), letter(0, true)];
        reduce(&mut w);
        assert!(w.is_empty());
        let mut w = vec![letter(2, true), letter(0, false), letter(2, false)];
        reduce(&mut w);
        assert_eq!(w, vec![letter(0, false)]);
    }

    #[test]
    fn triangle_and_tetrahedron_are_certified() {
        let tri = validate(&RawComplex::from_triangles(&[1, 2, 3], &[[0, 1, 2]])).unwrap();
        let r = fundamental_group_report(&tri).unwrap();
        assert_eq!(r.presentation.generators.len(), 1);
        assert_eq!(r.status, Triviality::CertifiedTrivial);

        let tet = validate(&RawComplex::from_triangles(
            &[1, 2, 3, 4],
            &[[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]],
        ))
        .unwrap();
        assert_eq!(
            fundamental_group_report(&tet).unwrap().status,
            Triviality::CertifiedTrivial
        );
    }

    #[test]
    fn free_group_is_not_certified() {
        // a2 : <a, b | aba^-1b^-1> never reduces to the empty presentation
        let p = Presentation {
            generators: vec!["a".into(), "b".into()],
            relators: vec![vec![
                letter(0, false),
                letter(1, false),
                letter(0, true),
                letter(1, true),
            ]],
        };
        assert_eq!(simplify(&p, SimplifyBudget::default()).status, Triviality::Unknown);
    }

    #[test]
    fn disconnected_skeleton() {
        let c = validate(&RawComplex::from_triangles(
            &[1, 2, 3, 4, 5, 6],
            &[[0, 1, 2], [3, 4, 5]],
        ))
        .unwrap();
        assert_eq!(fundamental_group_report(&c), Err(HomotopyError::Disconnected));
    }
}
