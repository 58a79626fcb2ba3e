//! Brute-force subgroup lattice of GL_2(F_q) for small q, used as the
//! soundness oracle for the subgroup-class elimination. Independent of the
//! crate under test: plain table arithmetic on matrices.

use std::collections::HashSet;

pub struct Gl2 {
    q: u64,
    elems: Vec<(u64, u64, u64, u64)>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    ident: u16,
}

impl Gl2 {
    pub fn new(q: u64) -> Self {
        let mut elems = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        if (a * d % q + q - b * c % q) % q != 0 {
                            elems.push((a, b, c, d));
                        }
                    }
                }
            }
        }
        let n = elems.len();
        assert!(n <= u16::MAX as usize);
        let index = |m: &(u64, u64, u64, u64)| -> usize {
            ((m.0 * q + m.1) * q + m.2) as usize * q as usize + m.3 as usize
        };
        let mut lookup = vec![u16::MAX; (q * q * q * q) as usize];
        for (i, m) in elems.iter().enumerate() {
            lookup[index(m)] = i as u16;
        }
        let mut mul = vec![0u16; n * n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                let z = (
                    (x.0 * y.0 + x.1 * y.2) % q,
                    (x.0 * y.1 + x.1 * y.3) % q,
                    (x.2 * y.0 + x.3 * y.2) % q,
                    (x.2 * y.1 + x.3 * y.3) % q,
                );
                mul[i * n + j] = lookup[index(&z)];
            }
        }
        let ident = lookup[index(&(1, 0, 0, 1))];
        let mut inv = vec![0u16; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == ident {
                    inv[i] = j as u16;
                    break;
                }
            }
        }
        Self { q, elems, mul, inv, ident }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    pub fn mul(&self, i: u16, j: u16) -> u16 {
        self.mul[i as usize * self.elems.len() + j as usize]
    }

    pub fn trace_det(&self, i: u16) -> (u64, u64) {
        let (a, b, c, d) = self.elems[i as usize];
        ((a + d) % self.q, ((a * d) % self.q + self.q - (b * c) % self.q) % self.q)
    }

    /// Largest proper subgroup order: closures exceeding it must be the
    /// whole group, so they can stop early.
    fn bail_threshold(&self) -> usize {
        self.order() / 2
    }

    fn closure(&self, seed: &[u16]) -> Vec<u16> {
        let n = self.order();
        let mut in_set = vec![false; n];
        let mut elems: Vec<u16> = Vec::new();
        let push = |x: u16, elems: &mut Vec<u16>, in_set: &mut Vec<bool>| {
            if !in_set[x as usize] {
                in_set[x as usize] = true;
                elems.push(x);
            }
        };
        push(self.ident, &mut elems, &mut in_set);
        for &s in seed {
            push(s, &mut elems, &mut in_set);
        }
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head];
            head += 1;
            let snapshot = elems.len();
            for k in 0..snapshot {
                let y = elems[k];
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if !in_set[z as usize] {
                        in_set[z as usize] = true;
                        elems.push(z);
                    }
                }
                if elems.len() > self.bail_threshold() {
                    return (0..n as u16).collect();
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    fn conjugates(&self, h: &[u16]) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        for g in 0..self.order() as u16 {
            let mut conj: Vec<u16> =
                h.iter().map(|&x| self.mul(self.mul(g, x), self.inv[g as usize])).collect();
            conj.sort_unstable();
            out.push(conj);
        }
        out
    }

    fn element_order(&self, x: u16) -> u64 {
        let mut o = 1;
        let mut y = x;
        while y != self.ident {
            y = self.mul(y, x);
            o += 1;
        }
        o
    }
}

fn is_prime_power(mut n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while n % p != 0 {
        p += 1;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Every subgroup, each as a sorted element-index list. BFS over conjugacy
/// classes: each class representative is extended by every cyclic subgroup
/// of prime-power order, and new classes are expanded into all conjugates.
/// Any subgroup sits atop a maximal chain, each step of which is such an
/// extension, so the walk is exhaustive.
pub fn all_subgroups(g: &Gl2) -> Vec<Vec<u16>> {
    let mut cyclic: HashSet<Vec<u16>> = HashSet::new();
    for x in 0..g.order() as u16 {
        if is_prime_power(g.element_order(x)) {
            cyclic.insert(g.closure(&[x]));
        }
    }
    let mut cyclic: Vec<Vec<u16>> = cyclic.into_iter().collect();
    cyclic.sort();

    let trivial = vec![g.ident];
    let mut all: HashSet<Vec<u16>> = HashSet::new();
    all.insert(trivial.clone());
    let mut queue = vec![trivial];
    while let Some(rep) = queue.pop() {
        for c in &cyclic {
            if c.iter().all(|x| rep.binary_search(x).is_ok()) {
                continue;
            }
            let mut seed = rep.clone();
            seed.extend_from_slice(c);
            let j = g.closure(&seed);
            if all.contains(&j) {
                continue;
            }
            for conj in g.conjugates(&j) {
                all.insert(conj);
            }
            queue.push(j);
        }
    }
    let mut out: Vec<Vec<u16>> = all.into_iter().collect();
    out.sort_by_key(|h| (h.len(), h.clone()));
    out
}

/// Distinct (trace, det) pairs over a subgroup.
pub fn charpolys(g: &Gl2, h: &[u16]) -> Vec<(u64, u64)> {
    let mut set: Vec<(u64, u64)> = h.iter().map(|&x| g.trace_det(x)).collect();
    set.sort_unstable();
    set.dedup();
    set
}

/// Subgroup generated by the given elements.
pub fn closure_of(g: &Gl2, gens: &[u16]) -> Vec<u16> {
    g.closure(gens)
}

/// Borel, the two Cartan normalizers, SL2 and the index-2 square-determinant
/// subgroup, as element lists.
pub fn standard_proper_subgroups(g: &Gl2) -> Vec<Vec<u16>> {
    let q = g.q;
    let by_matrix = |pred: &dyn Fn(&(u64, u64, u64, u64)) -> bool| -> Vec<u16> {
        let mut out: Vec<u16> = (0..g.order() as u16)
            .filter(|&i| pred(&g.elems[i as usize]))
            .collect();
        out.sort_unstable();
        out
    };
    let det = |m: &(u64, u64, u64, u64)| ((m.0 * m.3) % q + q - (m.1 * m.2) % q) % q;
    let squares: std::collections::HashSet<u64> = (1..q).map(|y| y * y % q).collect();
    vec![
        // upper triangular
        by_matrix(&|m| m.2 == 0),
        // split Cartan normalizer: diagonal and antidiagonal
        by_matrix(&|m| (m.1 == 0 && m.2 == 0) || (m.0 == 0 && m.3 == 0)),
        // nonsplit Cartan normalizer: matrices [[a, b nr], [b, a]] and
        // [[a, b nr], [-b, -a]], with nr a fixed non-residue
        {
            let nr = (2..q).find(|n| !squares.contains(n)).unwrap();
            by_matrix(&|m| {
                (m.1 == m.2 * nr % q && m.0 == m.3)
                    || (m.1 == m.2 * nr % q * (q - 1) % q && m.0 == (q - m.3) % q)
            })
        },
        by_matrix(&|m| det(m) == 1),
        by_matrix(&|m| squares.contains(&det(m))),
    ]
}

#[test]
fn gl2_f3_lattice_matches_literature() {
    let g = Gl2::new(3);
    assert_eq!(g.order(), 48);
    assert_eq!(all_subgroups(&g).len(), 55);
}
