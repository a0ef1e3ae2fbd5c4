//! Dense permutations of `0..degree`.
//!
//! Composition convention, used everywhere in this crate: `compose(p, q)`
//! applies the right factor first, i.e. `compose(p, q)(x) = p(q(x))`.

use crate::config::MAX_DEGREE;
use crate::error::{Error, Result};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    /// Identity on `degree` points. Degree is an internal invariant here;
    /// user-facing entry points (`from_images`, `parse_cycles`, configuration
    /// spaces) enforce the cap with a proper error.
    pub fn identity(degree: usize) -> Perm {
        assert!(degree <= MAX_DEGREE, "degree {degree} above hard cap");
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        if images.len() > MAX_DEGREE {
            return Err(Error::DegreeCap {
                cap: MAX_DEGREE,
                detail: format!("permutation of degree {}", images.len()),
            });
        }
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i as usize >= images.len() || seen[i as usize] {
                return Err(Error::Parse(format!(
                    "image array of length {} is not a bijection",
                    images.len()
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `compose(p, q)(x) = p(q(x))` — the right factor acts first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let mut images = vec![0u32; self.degree()];
        compose_into(&mut images, &self.images, &other.images);
        Ok(Perm { images })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate(&self, by: &Perm) -> Result<Perm> {
        if self.degree() != by.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: by.degree(),
            });
        }
        // by(self(by_inv(x))) computed without materializing by_inv:
        // result[by[x]] = by[self[x]].
        let mut images = vec![0u32; self.degree()];
        for x in 0..self.degree() {
            images[by.images[x] as usize] = by.images[self.images[x] as usize];
        }
        Ok(Perm { images })
    }

    /// Least point with `p(x) != x`, if any.
    pub fn least_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn support(&self) -> Vec<u32> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
            .collect()
    }

    /// Parse disjoint cycle notation, e.g. `"(0 1 2)(3 4)"`; `"()"` is the
    /// identity. Points may be separated by spaces or commas. A point
    /// repeated across cycles or at/above `degree` is an error.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                cap: MAX_DEGREE,
                detail: format!("cycle parse at degree {degree}"),
            });
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty cycle expression".into()));
        }
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::Parse(format!("expected '(' at {rest:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse("unbalanced '('".into()))?;
            let body = &rest[1..close];
            rest = rest[close + 1..].trim_start();
            let points: Vec<u32> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad point {s:?}")))
                })
                .collect::<Result<_>>()?;
            if points.len() == 1 {
                return Err(Error::Parse("cycle of length 1".into()));
            }
            for &p in &points {
                if p as usize >= degree {
                    return Err(Error::BadIndex {
                        what: "cycle point",
                        index: p as usize,
                        bound: degree,
                    });
                }
                if used[p as usize] {
                    return Err(Error::Parse(format!("point {p} repeated")));
                }
                used[p as usize] = true;
            }
            for (k, &p) in points.iter().enumerate() {
                images[p as usize] = points[(k + 1) % points.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Canonical cycle form: cycles sorted by least point, each cycle
    /// starting at its least point; identity prints as `"()"`.
    pub fn format_cycles(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() as u32 {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            out.push('(');
            let mut p = start;
            loop {
                seen[p as usize] = true;
                if p != start {
                    out.push(' ');
                }
                out.push_str(&p.to_string());
                p = self.apply(p);
                if p == start {
                    break;
                }
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// FNV-1a over the image array; used for cheap dedup pre-checks.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &x in &self.images {
            h ^= x as u64;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
        h
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = self.format_cycles();
        if s.len() > 200 {
            write!(f, "{}...", &s[..200])
        } else {
            write!(f, "{s}")
        }
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.images.len()))?;
        for x in &self.images {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}

/// `dst[x] = p[q[x]]` over raw image slices; the engine's hot path.
#[inline]
pub(crate) fn compose_into(dst: &mut [u32], p: &[u32], q: &[u32]) {
    debug_assert_eq!(p.len(), q.len());
    debug_assert_eq!(dst.len(), q.len());
    for (d, &qx) in dst.iter_mut().zip(q.iter()) {
        *d = p[qx as usize];
    }
}
