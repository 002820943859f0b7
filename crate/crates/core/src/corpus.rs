//! Built-in example spaces.

use crate::poset::{fence, FinitePoset};

/// The four-point minimal finite model of the circle: `a, b < c, d`.
pub fn circle() -> FinitePoset {
    FinitePoset::from_hasse(
        &["a", "b", "c", "d"],
        &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .expect("circle model is a poset")
}

/// Two maxima `y1, y2` each above all five minima `x1..x5`.
pub fn two_over_five() -> FinitePoset {
    let labels = ["x1", "x2", "x3", "x4", "x5", "y1", "y2"];
    let covers: Vec<(&str, &str)> = ["y1", "y2"]
        .iter()
        .flat_map(|&y| labels[..5].iter().map(move |&x| (x, y)))
        .collect();
    FinitePoset::from_hasse(&labels, &covers).expect("two_over_five is a poset")
}

/// A named corpus entry.
#[derive(Clone, Debug)]
pub struct Example {
    pub name: String,
    pub poset: FinitePoset,
}

/// Every built-in space: the circle model, the two-over-five poset and its
/// opposite, fences of length 0 to 4 and chains of 1 to 4 points.
pub fn all() -> Vec<Example> {
    let mut out = vec![
        Example {
            name: "circle".into(),
            poset: circle(),
        },
        Example {
            name: "two-over-five".into(),
            poset: two_over_five(),
        },
        Example {
            name: "two-over-five-op".into(),
            poset: two_over_five().opposite(),
        },
    ];
    for m in 0..=4 {
        out.push(Example {
            name: format!("fence-{m}"),
            poset: fence(m),
        });
    }
    for k in 1..=4 {
        out.push(Example {
            name: format!("chain-{k}"),
            poset: FinitePoset::chain(k),
        });
    }
    out
}

pub fn by_name(name: &str) -> Option<FinitePoset> {
    all().into_iter().find(|e| e.name == name).map(|e| e.poset)
}
