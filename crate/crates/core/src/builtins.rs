//! Named complexes, some with embedding data, and presentation complexes.

use std::sync::Arc;

use serde::Serialize;

use crate::complex::{ComplexBuilder, TwoComplex};
use crate::thickening::{EmbeddingData, Side};
use crate::Error;

/// Statistics every entry is checked against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedStats {
    pub chi: i64,
    pub collapsed: bool,
    pub betti: [usize; 3],
    pub torsion: Vec<u64>,
    pub status: &'static str,
    /// χ of each boundary component, for entries with embedding data.
    pub boundary_chis: Option<Vec<i64>>,
}

#[derive(Debug, Clone)]
pub struct BuiltinEntry {
    pub name: String,
    pub complex: Arc<TwoComplex>,
    pub embedding: Option<EmbeddingData>,
    pub doc: &'static str,
    pub expected: ExpectedStats,
}

pub const NAMES: [&str; 8] = ["bing_house", "dunce_hat", "sphere", "torus", "rp2", "wedge_circles", "point", "circle"];

/// Looks up a builtin. `wedge_circles` takes an optional count, written
/// `wedge_circles:3` or `wedge_circles(3)`; the default is 2.
pub fn builtin(name: &str) -> Result<BuiltinEntry, Error> {
    let unknown = || Error::UnknownBuiltin(name.to_string());
    if let Some(rest) = name.strip_prefix("wedge_circles") {
        let count = rest
            .strip_prefix(':')
            .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')));
        let k = match (rest.is_empty(), count) {
            (true, _) => 2,
            (false, Some(c)) => c.parse().map_err(|_| unknown())?,
            (false, None) => return Err(unknown()),
        };
        return Ok(wedge_circles(k));
    }
    let stats = |chi, collapsed, betti, torsion: &[u64], status, boundary: Option<&[i64]>| ExpectedStats {
        chi,
        collapsed,
        betti,
        torsion: torsion.to_vec(),
        status,
        boundary_chis: boundary.map(<[i64]>::to_vec),
    };
    let entry = match name {
        "bing_house" => {
            let (x, emb) = crate::bing::bing_house();
            BuiltinEntry {
                name: name.into(),
                complex: Arc::new(x),
                embedding: Some(emb),
                doc: "Bing's house with two rooms: contractible, collapsed, thickens to a ball",
                expected: stats(1, true, [1, 0, 0], &[], "CONTRACTIBLE", Some(&[2])),
            }
        }
        "dunce_hat" => {
            let x = presentation_complex(&["a"], &["a a a^-1"]).expect("valid");
            let emb = EmbeddingData::new(
                &x,
                vec![vec![(0, 0), (0, 1), (0, 2)]],
                vec![vec![Side::Succ, Side::Succ, Side::Pred]],
            )
            .expect("frozen data fits");
            BuiltinEntry {
                name: name.into(),
                complex: Arc::new(x),
                embedding: Some(emb),
                doc: "dunce hat <a | a a a^-1>: contractible, collapsed, not collapsible",
                expected: stats(1, true, [1, 0, 0], &[], "CONTRACTIBLE", Some(&[2])),
            }
        }
        "sphere" => {
            let mut b = ComplexBuilder::new();
            let v = b.vertex("v");
            let e = b.edge("e", v, v);
            b.disc("N", &[(e, 1)]);
            b.disc("S", &[(e, 1)]);
            let x = b.build().expect("valid");
            let emb = EmbeddingData::with_orders(&x, vec![vec![(0, 0), (1, 0)]]).expect("fits");
            BuiltinEntry {
                name: name.into(),
                complex: Arc::new(x),
                embedding: Some(emb),
                doc: "2-sphere as two monogons on one loop",
                expected: stats(2, true, [1, 0, 1], &[], "NOT_CONTRACTIBLE", Some(&[2, 2])),
            }
        }
        "torus" => {
            let x = presentation_complex(&["a", "b"], &["a b a^-1 b^-1"]).expect("valid");
            let emb = EmbeddingData::with_orders(&x, vec![vec![(0, 0), (0, 2)], vec![(0, 1), (0, 3)]]).expect("fits");
            BuiltinEntry {
                name: name.into(),
                complex: Arc::new(x),
                embedding: Some(emb),
                doc: "torus <a, b | a b a^-1 b^-1> with the product thickening",
                expected: stats(0, true, [1, 2, 1], &[], "NOT_CONTRACTIBLE", Some(&[0, 0])),
            }
        }
        "rp2" => BuiltinEntry {
            name: name.into(),
            complex: Arc::new(presentation_complex(&["a"], &["a a"]).expect("valid")),
            embedding: None,
            doc: "projective plane <a | a a>",
            expected: stats(1, true, [1, 0, 0], &[2], "NOT_CONTRACTIBLE", None),
        },
        "point" => {
            let mut b = ComplexBuilder::new();
            b.vertex("v");
            BuiltinEntry {
                name: name.into(),
                complex: Arc::new(b.build().expect("valid")),
                embedding: None,
                doc: "a single vertex",
                expected: stats(1, true, [1, 0, 0], &[], "CONTRACTIBLE", None),
            }
        }
        "circle" => BuiltinEntry {
            name: name.into(),
            complex: Arc::new(presentation_complex(&["a"], &[] as &[&str]).expect("valid")),
            embedding: None,
            doc: "one vertex with one loop",
            expected: stats(0, true, [1, 1, 0], &[], "NOT_CONTRACTIBLE", None),
        },
        _ => return Err(unknown()),
    };
    Ok(entry)
}

/// Bing's house before coarsening: 83 unit squares on the integer grid.
pub fn bing_house_cubical() -> BuiltinEntry {
    let (x, emb) = crate::bing::cubical_house();
    BuiltinEntry {
        name: "bing_house_cubical".into(),
        complex: Arc::new(x),
        embedding: Some(emb),
        doc: "Bing's house as 83 unit squares, before coarsening",
        expected: ExpectedStats {
            chi: 1,
            collapsed: true,
            betti: [1, 0, 0],
            torsion: vec![],
            status: "CONTRACTIBLE",
            boundary_chis: Some(vec![2]),
        },
    }
}

pub fn wedge_circles(k: usize) -> BuiltinEntry {
    let gens = generator_names(k);
    let x = presentation_complex(&gens, &[] as &[&str]).expect("valid");
    BuiltinEntry {
        name: format!("wedge_circles:{k}"),
        complex: Arc::new(x),
        embedding: None,
        doc: "wedge of k circles (default 2)",
        expected: ExpectedStats {
            chi: 1 - k as i64,
            collapsed: true,
            betti: [1, k, 0],
            torsion: vec![],
            status: if k == 0 { "CONTRACTIBLE" } else { "NOT_CONTRACTIBLE" },
            boundary_chis: None,
        },
    }
}

/// `a`, `b`, ... for up to 26 generators, `g0`, `g1`, ... beyond.
pub fn generator_names(k: usize) -> Vec<String> {
    if k <= 26 {
        (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..k).map(|i| format!("g{i}")).collect()
    }
}

/// One vertex, one loop per generator and one disc per relator. Relators
/// are whitespace-separated tokens `x` or `x^-1`; no reduction is applied.
pub fn presentation_complex(generators: &[impl AsRef<str>], relators: &[impl AsRef<str>]) -> Result<TwoComplex, Error> {
    let mut b = ComplexBuilder::new();
    let v = b.vertex("v");
    let mut ids = Vec::with_capacity(generators.len());
    for g in generators {
        let g = g.as_ref();
        if g.is_empty() || g.contains(char::is_whitespace) || g.contains('^') {
            return Err(Error::Presentation(format!("bad generator name `{g}`")));
        }
        ids.push((g.to_string(), b.edge(g, v, v)));
    }
    for (i, r) in relators.iter().enumerate() {
        let mut word = Vec::new();
        for token in r.as_ref().split_whitespace() {
            let (name, sign) = match token.strip_suffix("^-1") {
                Some(n) => (n, -1),
                None => (token.strip_suffix("^1").unwrap_or(token), 1),
            };
            let edge = ids
                .iter()
                .find(|(g, _)| g == name)
                .map(|&(_, e)| e)
                .ok_or_else(|| Error::Presentation(format!("relator {i}: unknown generator `{name}`")))?;
            word.push((edge, sign));
        }
        if word.is_empty() {
            return Err(Error::Presentation(format!("relator {i} is empty")));
        }
        b.disc(format!("R{i}"), &word);
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    #[test]
    fn presentation_complexes() {
        let t = presentation_complex(&["a", "b"], &["a b a^-1 b^-1"]).unwrap();
        assert!(are_isomorphic(&t, &builtin("torus").unwrap().complex));
        assert!(presentation_complex(&["a"], &[""]).is_err());
        assert!(presentation_complex(&["a"], &["b"]).is_err());
    }

    #[test]
    fn wedge_names() {
        assert_eq!(builtin("wedge_circles").unwrap().complex.num_edges(), 2);
        assert_eq!(builtin("wedge_circles:3").unwrap().complex.num_edges(), 3);
        assert_eq!(builtin("wedge_circles(4)").unwrap().complex.num_edges(), 4);
        assert!(builtin("wedge_circles:x").is_err());
        assert!(builtin("klein").is_err());
    }
}
