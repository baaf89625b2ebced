//! Built-in families of simple polytopes with canonical coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::polytope::PolytopeData;
use crate::{Error, Result};

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// The cube `I^n` with vertex `v` at the point whose `j`-th coordinate is bit
/// `j` of `v`. Facets are `x_{n-1}=0, ..., x_0=0, x_0=1, ..., x_{n-1}=1`, so
/// facet `i` is opposite facet `2n-1-i`.
pub fn cube(n: usize) -> Result<PolytopeData> {
    if n == 0 || n > 10 {
        return Err(Error::Parse(format!("cube dimension must be in 1..=10, got {n}")));
    }
    let nv = 1usize << n;
    let coords = (0..nv)
        .map(|v| (0..n).map(|j| q((v >> j & 1) as i64)).collect())
        .collect();
    let mut facets = Vec::with_capacity(2 * n);
    for j in (0..n).rev() {
        facets.push((0..nv).filter(|v| v >> j & 1 == 0).collect());
    }
    for j in 0..n {
        facets.push((0..nv).filter(|v| v >> j & 1 == 1).collect());
    }
    Ok(PolytopeData {
        name: format!("I{n}"),
        dim: n,
        vertex_count: nv,
        facets,
        coords: Some(coords),
    })
}

/// The `m`-gon with vertices `(i, i^2)` on a parabola; edge `i` joins `i, i+1`.
pub fn polygon(m: usize) -> Result<PolytopeData> {
    if m < 3 {
        return Err(Error::Parse(format!("a polygon needs at least 3 vertices, got {m}")));
    }
    Ok(PolytopeData {
        name: format!("polygon{m}"),
        dim: 2,
        vertex_count: m,
        facets: (0..m).map(|i| vec![i, (i + 1) % m]).collect(),
        coords: Some((0..m as i64).map(|i| vec![q(i), q(i * i)]).collect()),
    })
}

/// The standard simplex with vertices `0, e_1, ..., e_n`; facet `i` omits vertex `i`.
pub fn simplex(n: usize) -> Result<PolytopeData> {
    if n == 0 || n > 12 {
        return Err(Error::Parse(format!("simplex dimension must be in 1..=12, got {n}")));
    }
    let coords = (0..=n)
        .map(|v| (0..n).map(|j| q((v == j + 1) as i64)).collect())
        .collect();
    Ok(PolytopeData {
        name: format!("simplex{n}"),
        dim: n,
        vertex_count: n + 1,
        facets: (0..=n).map(|i| (0..=n).filter(|&v| v != i).collect()).collect(),
        coords: Some(coords),
    })
}

/// `m`-gon times a segment. Vertex `i + m t` sits at `(i, i^2, t)`. Facets are
/// the `m` side squares followed by the bottom and top polygons.
pub fn prism(m: usize) -> Result<PolytopeData> {
    if m < 3 {
        return Err(Error::Parse(format!("a prism needs a polygon with at least 3 vertices, got {m}")));
    }
    let mut facets: Vec<Vec<usize>> = (0..m)
        .map(|j| {
            let k = (j + 1) % m;
            vec![j, k, k + m, j + m]
        })
        .collect();
    facets.push((0..m).collect());
    facets.push((m..2 * m).collect());
    let coords = (0..2 * m)
        .map(|v| {
            let (i, t) = ((v % m) as i64, (v / m) as i64);
            vec![q(i), q(i * i), q(t)]
        })
        .collect();
    Ok(PolytopeData {
        name: format!("prism{m}"),
        dim: 3,
        vertex_count: 2 * m,
        facets,
        coords: Some(coords),
    })
}

/// Product of an `m1`-gon and an `m2`-gon. Vertex `i m2 + j` sits at
/// `(i, i^2, j, j^2)`; facets are `edge_a x Q` for each edge of the first
/// polygon, then `P x edge_b`.
pub fn polygon_product(m1: usize, m2: usize) -> Result<PolytopeData> {
    if m1 < 3 || m2 < 3 {
        return Err(Error::Parse(format!(
            "polygon product needs both sides at least 3, got {m1} and {m2}"
        )));
    }
    let idx = |i: usize, j: usize| i * m2 + j;
    let mut facets = Vec::with_capacity(m1 + m2);
    for a in 0..m1 {
        let mut f: Vec<usize> = [a, (a + 1) % m1]
            .iter()
            .flat_map(|&i| (0..m2).map(move |j| idx(i, j)))
            .collect();
        f.sort_unstable();
        facets.push(f);
    }
    for b in 0..m2 {
        let mut f: Vec<usize> = (0..m1)
            .flat_map(|i| [b, (b + 1) % m2].map(|j| idx(i, j)))
            .collect();
        f.sort_unstable();
        facets.push(f);
    }
    let coords = (0..m1 * m2)
        .map(|v| {
            let (i, j) = ((v / m2) as i64, (v % m2) as i64);
            vec![q(i), q(i * i), q(j), q(j * j)]
        })
        .collect();
    Ok(PolytopeData {
        name: format!("polygon{m1}x{m2}"),
        dim: 4,
        vertex_count: m1 * m2,
        facets,
        coords: Some(coords),
    })
}

/// Dispatches on a family name: `cube`, `polygon`, `simplex`, `prism`, `product`.
pub fn by_name(family: &str, params: &[usize]) -> Result<PolytopeData> {
    let one = || -> Result<usize> {
        match params {
            [a] => Ok(*a),
            _ => Err(Error::Parse(format!("family `{family}` takes exactly one parameter"))),
        }
    };
    match family {
        "cube" => cube(one()?),
        "polygon" => polygon(one()?),
        "simplex" => simplex(one()?),
        "prism" => prism(one()?),
        "product" => match params {
            [a, b] => polygon_product(*a, *b),
            _ => Err(Error::Parse("family `product` takes two parameters".into())),
        },
        other => Err(Error::Parse(format!("unknown polytope family `{other}`"))),
    }
}
