//! Compiled-in example algebras, addressable by name.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraSpec, StructureConstants};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Names accepted by [`builtin`], besides the parametrised `zero:N` and `random:P:N:SEED`.
pub const BUILTIN_NAMES: &[&str] = &[
    "m2q",
    "qz3",
    "sl2",
    "sl2-half",
    "octonions",
    "zero3",
    "poisson-sl2",
];

const Q: FieldSpec = FieldSpec::Rational;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn table(entries: &[(usize, usize, usize, i64)]) -> StructureConstants {
    table_over(Q, entries, 1)
}

fn table_over(
    field: FieldSpec,
    entries: &[(usize, usize, usize, i64)],
    den: i64,
) -> StructureConstants {
    entries
        .iter()
        .map(|&(i, j, k, c)| {
            (
                (i, j, k),
                field.from_ratio(c, den).expect("nonzero denominator"),
            )
        })
        .collect()
}

/// 2×2 rational matrices on the matrix units `e11, e12, e21, e22`.
pub fn m2q() -> AlgebraSpec {
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut mu = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                // e_ij e_jl = e_il
                mu.push((idx(i, j), idx(j, l), idx(i, l), 1));
            }
        }
    }
    AlgebraSpec::new(
        "m2q",
        Q,
        names(&["e11", "e12", "e21", "e22"]),
        table(&mu),
        None,
    )
    .expect("valid builtin")
}

/// Group algebra of the cyclic group of order 3 on `1, g, g^2`.
pub fn qz3() -> AlgebraSpec {
    let mut mu = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            mu.push((a, b, (a + b) % 3, 1));
        }
    }
    AlgebraSpec::new("qz3", Q, names(&["1", "g", "g2"]), table(&mu), None).expect("valid builtin")
}

fn sl2_table(den: i64) -> StructureConstants {
    // basis e, h, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h
    let (e, h, f) = (0, 1, 2);
    table_over(
        Q,
        &[
            (h, e, e, 2),
            (e, h, e, -2),
            (h, f, f, -2),
            (f, h, f, 2),
            (e, f, h, 1),
            (f, e, h, -1),
        ],
        den,
    )
}

/// `sl_2(Q)` with its Lie bracket as the multiplication.
pub fn sl2() -> AlgebraSpec {
    AlgebraSpec::new("sl2", Q, names(&["e", "h", "f"]), sl2_table(1), None).expect("valid builtin")
}

/// `sl_2(Q)` as a torsion algebra: multiplication `½[,]`, bracket `[,]`.
pub fn sl2_half() -> AlgebraSpec {
    AlgebraSpec::new(
        "sl2-half",
        Q,
        names(&["e", "h", "f"]),
        sl2_table(2),
        Some(sl2_table(1)),
    )
    .expect("valid builtin")
}

/// Zero multiplication with the `sl_2` bracket: a finite-dimensional Poisson-style carrier.
pub fn poisson_sl2() -> AlgebraSpec {
    AlgebraSpec::new(
        "poisson-sl2",
        Q,
        names(&["e", "h", "f"]),
        StructureConstants::new(),
        Some(sl2_table(1)),
    )
    .expect("valid builtin")
}

/// Octonions over `Q` from the Fano plane lines `(1,2,4), (2,3,5), …, (7,1,3)`.
pub fn octonions() -> AlgebraSpec {
    const LINES: [(usize, usize, usize); 7] = [
        (1, 2, 4),
        (2, 3, 5),
        (3, 4, 6),
        (4, 5, 7),
        (5, 6, 1),
        (6, 7, 2),
        (7, 1, 3),
    ];
    let mut mu = Vec::new();
    for i in 0..8 {
        mu.push((0, i, i, 1));
        if i > 0 {
            mu.push((i, 0, i, 1));
            mu.push((i, i, 0, -1));
        }
    }
    for (a, b, c) in LINES {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            mu.push((x, y, z, 1));
            mu.push((y, x, z, -1));
        }
    }
    let basis = names(&["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"]);
    AlgebraSpec::new("octonions", Q, basis, table(&mu), None).expect("valid builtin")
}

/// Zero multiplication on `Q^n`.
pub fn zero_algebra(n: usize) -> AlgebraSpec {
    let basis = (0..n).map(|i| format!("z{i}")).collect();
    AlgebraSpec::new(
        format!("zero{n}"),
        Q,
        basis,
        StructureConstants::new(),
        None,
    )
    .expect("valid builtin")
}

/// Uniformly random structure constants over `F_p`, reproducible from `seed`.
pub fn random_algebra(p: u64, n: usize, seed: u64) -> Result<AlgebraSpec> {
    let field = FieldSpec::prime(p)?;
    if n == 0 {
        return Err(Error::Validation("dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mu = StructureConstants::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = rng.random_range(0..p);
                if c != 0 {
                    mu.insert((i, j, k), field.from_i64(c as i64));
                }
            }
        }
    }
    let basis = (0..n).map(|i| format!("x{i}")).collect();
    AlgebraSpec::new(format!("random:{p}:{n}:{seed}"), field, basis, mu, None)
}

/// Resolves a builtin by name.
pub fn builtin(name: &str) -> Result<AlgebraSpec> {
    match name {
        "m2q" => Ok(m2q()),
        "qz3" => Ok(qz3()),
        "sl2" => Ok(sl2()),
        "sl2-half" => Ok(sl2_half()),
        "octonions" => Ok(octonions()),
        "zero3" => Ok(zero_algebra(3)),
        "poisson-sl2" => Ok(poisson_sl2()),
        _ => {
            let parts: Vec<&str> = name.split(':').collect();
            let num = |s: &str| -> Result<u64> {
                s.parse()
                    .map_err(|_| Error::UnknownAlgebra(name.to_string()))
            };
            match parts.as_slice() {
                ["zero", n] if num(n)? > 0 => Ok(zero_algebra(num(n)? as usize)),
                ["random", p, n, seed] => random_algebra(num(p)?, num(n)? as usize, num(seed)?),
                _ => Err(Error::UnknownAlgebra(name.to_string())),
            }
        }
    }
}
