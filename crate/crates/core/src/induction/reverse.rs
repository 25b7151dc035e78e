//! Resolving reversed arrows: given a vertex and a move kind, find the
//! unique arrow of that kind that ends there.

use super::class::Incoming;
use super::{apply_arrow, Arrow, ClassMode, MoveKind, RauzyClass};
use crate::error::{Error, Result};
use crate::gp::{GeneralizedPermutation, Letter};

pub trait ReverseResolver: Sync {
    /// The forward arrow of `kind` whose target is `gp`.
    fn reverse(&self, gp: &GeneralizedPermutation, kind: MoveKind) -> Result<Arrow>;
}

impl ReverseResolver for RauzyClass {
    fn reverse(&self, gp: &GeneralizedPermutation, kind: MoveKind) -> Result<Arrow> {
        let missing = || Error::ReverseArrowMissing { kind, gp: gp.to_string() };
        let v = self.find(gp).ok_or_else(missing)?;
        let src = match self.incoming(v, kind) {
            Incoming::None => return Err(missing()),
            Incoming::Many => return Err(Error::ReverseArrowAmbiguous { kind, gp: gp.to_string() }),
            Incoming::One(s) => s as usize,
        };
        let source = match self.mode() {
            ClassMode::Labeled => self.vertex(src),
            ClassMode::Reduced => {
                // the class vertex maps onto a relabeling of gp; transport the
                // source through the same relabeling
                let s = self.vertex(src);
                let t = apply_arrow(&s, kind)?.target;
                let mut map = vec![Letter::MAX; gp.d()];
                for (a, b) in t.top().iter().chain(t.bottom()).zip(gp.top().iter().chain(gp.bottom())) {
                    map[*a as usize] = *b;
                }
                s.relabel(&map, gp.alphabet().clone())
            }
        };
        let arrow = apply_arrow(&source, kind)?;
        debug_assert_eq!(&arrow.target, gp);
        Ok(arrow)
    }
}

/// Resolves reversed arrows without a class by trying every possible
/// former position of the loser and keeping irreducible sources whose move
/// lands on the vertex.
#[derive(Debug, Clone, Copy, Default)]
pub struct LocalInverse;

impl ReverseResolver for LocalInverse {
    fn reverse(&self, gp: &GeneralizedPermutation, kind: MoveKind) -> Result<Arrow> {
        let mut found: Vec<Arrow> = Vec::new();
        let (top, bottom) = (gp.top(), gp.bottom());
        for p in 0..top.len() + bottom.len() {
            let mut t = top.to_vec();
            let mut b = bottom.to_vec();
            let l = if p < top.len() { t.remove(p) } else { b.remove(p - top.len()) };
            match kind {
                MoveKind::Top => b.push(l),
                MoveKind::Bottom => t.push(l),
            }
            if t.is_empty() || b.is_empty() {
                continue;
            }
            let src = GeneralizedPermutation::from_parts_unchecked(gp.alphabet().clone(), t, b);
            let Ok(a) = apply_arrow(&src, kind) else { continue };
            if &a.target != gp || !src.is_irreducible() || !src.satisfies_convention() {
                continue;
            }
            if !found.iter().any(|f| f.source == a.source) {
                found.push(a);
            }
        }
        match found.len() {
            0 => Err(Error::ReverseArrowMissing { kind, gp: gp.to_string() }),
            1 => Ok(found.pop().unwrap()),
            _ => Err(Error::ReverseArrowAmbiguous { kind, gp: gp.to_string() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_class, enumerate_class_with};
    use super::*;

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn resolvers_agree_on_small_classes() {
        for seed in ["1 2 3 4 / 4 3 2 1", "1 2 3 A A 4 / 4 3 B B 2 1"] {
            let g = gp(seed);
            let labeled = enumerate_class(&g, 20_000).ok();
            let reduced = enumerate_class_with(&g, ClassMode::Reduced, 1_000_000).unwrap();
            for v in reduced.vertices().take(300) {
                for k in MoveKind::BOTH {
                    match (reduced.reverse(&v, k), LocalInverse.reverse(&v, k)) {
                        (Ok(a), Ok(b)) => {
                            assert_eq!(a.source, b.source);
                            assert_eq!(a.target, v);
                        }
                        (Err(Error::ReverseArrowMissing { .. }), Err(Error::ReverseArrowMissing { .. })) => {}
                        (a, b) => panic!("{v} {k}: {a:?} vs {b:?}"),
                    }
                }
            }
            if let Some(c) = &labeled {
                for v in c.vertices().take(300) {
                    for k in MoveKind::BOTH {
                        let (a, b) = (c.reverse(&v, k), LocalInverse.reverse(&v, k));
                        assert_eq!(a.map(|x| x.source).ok(), b.map(|x| x.source).ok());
                    }
                }
            }
        }
    }

    #[test]
    fn torus_reverse_is_loop() {
        let t = gp("1 2 / 2 1");
        let a = LocalInverse.reverse(&t, MoveKind::Top).unwrap();
        assert_eq!(a.source, t);
    }
}
