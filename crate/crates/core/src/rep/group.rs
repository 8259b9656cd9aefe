//! Finite groups given by multiplication tables.

use crate::error::Error;

/// A finite group on elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    unit: usize,
}

impl FiniteGroup {
    /// Validates the table against the group axioms and derives inverses.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        unit: usize,
    ) -> Result<Self, Error> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if unit >= order {
            return Err(Error::InvalidGroup(format!("unit {unit} out of range")));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&c| c >= order) {
                return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
            }
            flat.extend_from_slice(row);
        }
        let mul = |a: usize, b: usize| flat[a * order + b];
        for a in 0..order {
            if mul(unit, a) != a || mul(a, unit) != a {
                return Err(Error::InvalidGroup(format!("{unit} is not a two-sided unit")));
            }
        }
        let inv = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| mul(a, b) == unit && mul(b, a) == unit)
                    .ok_or_else(|| Error::InvalidGroup(format!("{a} has no inverse")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            order,
            table: flat,
            inv,
            unit,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `u a u^{-1}`.
    #[inline]
    pub fn conj(&self, u: usize, a: usize) -> usize {
        self.mul(self.mul(u, a), self.inv(u))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }
}

/// `Z/n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, Error> {
    if n == 0 {
        return Err(Error::UnknownGroup("cyclic(0)".into()));
    }
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(format!("c{n}"), table, 0)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Symmetric group on `n` letters; element 0 is the identity and elements
/// are listed in lexicographic order of their image tuples.
pub fn symmetric(n: usize) -> Result<FiniteGroup, Error> {
    if n == 0 || n > 5 {
        return Err(Error::UnknownGroup(format!("symmetric({n})")));
    }
    let perms = permutations(n);
    let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
    let table = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index(&(0..n).map(|i| a[b[i]]).collect()))
                .collect()
        })
        .collect();
    FiniteGroup::from_table(format!("s{n}"), table, 0)
}

/// Dihedral group of the given (even) order; element `r^a s^b` has index `a + k b`.
pub fn dihedral(order: usize) -> Result<FiniteGroup, Error> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::UnknownGroup(format!("dihedral({order})")));
    }
    let k = order / 2;
    let decode = |x: usize| (x % k, x / k);
    let table = (0..order)
        .map(|x| {
            (0..order)
                .map(|y| {
                    let (a, b) = decode(x);
                    let (c, d) = decode(y);
                    // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b + d)
                    let rot = if b == 0 { (a + c) % k } else { (a + k - c) % k };
                    rot + k * ((b + d) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(format!("d{order}"), table, 0)
}

/// Quaternion group; index `u + 4 s` stands for `(-1)^s * [1, i, j, k][u]`.
pub fn quaternion8() -> Result<FiniteGroup, Error> {
    // unit products: (sign, unit)
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let table = (0..8)
        .map(|x: usize| {
            (0..8)
                .map(|y: usize| {
                    let (s, u) = UNITS[x % 4][y % 4];
                    u + 4 * ((s + x / 4 + y / 4) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table("q8", table, 0)
}

/// Looks up `c<n>`, `cyclic(n)`, `s<n>`, `symmetric(n)`, `d<n>`,
/// `dihedral(n)`, `q8` or `quaternion(8)`.
pub fn builtin_group(name: &str) -> Result<FiniteGroup, Error> {
    let unknown = || Error::UnknownGroup(name.to_string());
    let name = name.trim();
    let (family, arg) = if let Some(open) = name.find('(') {
        let inner = name[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
        (&name[..open], inner)
    } else {
        let split = name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?;
        (&name[..split], &name[split..])
    };
    let n: usize = arg.trim().parse().map_err(|_| unknown())?;
    match family {
        "c" | "cyclic" => cyclic(n),
        "s" | "symmetric" => symmetric(n),
        "d" | "dihedral" => dihedral(n),
        "q" | "quaternion" if n == 8 => quaternion8(),
        _ => Err(unknown()),
    }
    .map_err(|_| unknown())
}

/// A subgroup, stored as a sorted member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn trivial(k: &FiniteGroup) -> Self {
        Subgroup {
            members: vec![k.unit()],
        }
    }

    pub fn whole(k: &FiniteGroup) -> Self {
        Subgroup {
            members: (0..k.order()).collect(),
        }
    }

    pub fn from_members(k: &FiniteGroup, members: &[usize]) -> Result<Self, Error> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&a| a >= k.order()) {
            return Err(Error::InvalidSubgroup(format!("element {bad} out of range")));
        }
        if members.binary_search(&k.unit()).is_err() {
            return Err(Error::InvalidSubgroup("missing the unit".into()));
        }
        for &a in &members {
            if members.binary_search(&k.inv(a)).is_err() {
                return Err(Error::InvalidSubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &members {
                if members.binary_search(&k.mul(a, b)).is_err() {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed under product at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Subgroup { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }
}
