//! Tate cohomology `H^0`, `H^-1` and Herbrand quotients for modules over a
//! finite cyclic group `G = <σ>`.
//!
//! A module is `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k`, handled as the quotient of
//! `Z^(r+k)` by the relation lattice `R = ⊕ d_i Z`; `σ` is an integer matrix
//! whose column `j` is `σ(e_j)`. Both cohomology groups are quotients of
//! explicit lattices and are computed with Smith normal form.

use std::fmt;

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{apply, identity, mat_mul, smith, unit, Lattice, Matrix, Vector};

/// Largest torsion coefficient accepted in a module description.
pub const MAX_TORSION: i128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicModule {
    group_order: u32,
    free_rank: usize,
    torsion: Vec<i128>,
    sigma: Matrix,
    multiplicative: bool,
}

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/invariants[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub invariants: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { invariants: Vec::new(), free_rank: 0 }
    }

    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.invariants.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariants.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "invariants": self.invariants.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "order": self.order().map_or("inf".to_string(), |o| o.to_string()),
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = vec!["Z".into(); self.free_rank];
        parts.extend(self.invariants.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" x "))
    }
}

fn reduce_entry(x: i128, d: i128) -> i128 {
    if d == 0 {
        x
    } else {
        x.rem_euclid(d)
    }
}

impl CyclicModule {
    /// Validates `σ(R) ⊆ R` and `σ^n ≡ 1 (mod R)`, reducing torsion rows.
    pub fn new(
        group_order: u32,
        free_rank: usize,
        torsion: Vec<i128>,
        sigma: Matrix,
        multiplicative: bool,
    ) -> Result<Self> {
        if group_order == 0 {
            return Err(Error::InvalidModule("group order must be positive".into()));
        }
        if let Some(d) = torsion.iter().find(|&&d| d < 1 || d > MAX_TORSION) {
            return Err(Error::InvalidModule(format!("torsion coefficient {d} out of range")));
        }
        let m = free_rank + torsion.len();
        if sigma.len() != m || sigma.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidModule(format!("sigma must be a {m}x{m} matrix")));
        }
        let mut module = CyclicModule { group_order, free_rank, torsion, sigma, multiplicative };
        for i in 0..m {
            let d = module.modulus(i);
            for j in 0..m {
                module.sigma[i][j] = reduce_entry(module.sigma[i][j], d);
            }
        }
        // σ(d_i e_i) ∈ R: free coordinates of torsion columns must vanish
        for j in free_rank..m {
            for i in 0..free_rank {
                if module.sigma[i][j] != 0 {
                    return Err(Error::InvalidModule(format!(
                        "sigma maps torsion generator {j} to an element of infinite order"
                    )));
                }
            }
            let dj = module.modulus(j);
            for i in free_rank..m {
                let di = module.modulus(i);
                if (module.sigma[i][j] * dj) % di != 0 {
                    return Err(Error::InvalidModule(format!(
                        "sigma does not respect the order of generator {j}"
                    )));
                }
            }
        }
        let rel = module.relations();
        let power = module.sigma_power(group_order as usize)?;
        for j in 0..m {
            let mut col: Vector = power.iter().map(|r| r[j]).collect();
            col[j] -= 1;
            if !rel.contains(&col)? {
                return Err(Error::InvalidModule(format!("sigma^{group_order} is not the identity")));
            }
        }
        Ok(module)
    }

    /// `Z^r` with the given action.
    pub fn free(group_order: u32, sigma: Matrix) -> Result<Self> {
        let r = sigma.len();
        CyclicModule::new(group_order, r, Vec::new(), sigma, false)
    }

    /// A module with trivial action.
    pub fn trivial(group_order: u32, free_rank: usize, torsion: Vec<i128>) -> Result<Self> {
        let m = free_rank + torsion.len();
        CyclicModule::new(group_order, free_rank, torsion, identity(m), false)
    }

    pub fn group_order(&self) -> u32 {
        self.group_order
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i128] {
        &self.torsion
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of generator `i` (0 for free generators).
    pub fn modulus(&self, i: usize) -> i128 {
        if i < self.free_rank {
            0
        } else {
            self.torsion[i - self.free_rank]
        }
    }

    /// `|A|` for a finite module.
    pub fn order(&self) -> Option<u128> {
        (self.free_rank == 0).then(|| self.torsion.iter().map(|&d| d as u128).product())
    }

    /// The relation lattice `R`.
    pub fn relations(&self) -> Lattice {
        let m = self.rank();
        let gens = (self.free_rank..m).map(|i| {
            let mut v = unit(m, i);
            v[i] = self.modulus(i);
            v
        });
        Lattice::span(m, gens).expect("diagonal relations")
    }

    /// Reduces torsion coordinates into `[0, d_i)`.
    pub fn reduce(&self, v: &[i128]) -> Vector {
        v.iter().enumerate().map(|(i, &x)| reduce_entry(x, self.modulus(i))).collect()
    }

    fn reduce_matrix(&self, m: Matrix) -> Matrix {
        m.into_iter()
            .enumerate()
            .map(|(i, row)| row.into_iter().map(|x| reduce_entry(x, self.modulus(i))).collect())
            .collect()
    }

    pub fn sigma_power(&self, k: usize) -> Result<Matrix> {
        let mut acc = identity(self.rank());
        for _ in 0..k {
            acc = self.reduce_matrix(mat_mul(&self.sigma, &acc)?);
        }
        Ok(acc)
    }

    /// `N = Σ_{i<n} σ^i`.
    pub fn norm_matrix(&self) -> Result<Matrix> {
        let m = self.rank();
        let mut acc = vec![vec![0i128; m]; m];
        let mut power = identity(m);
        for _ in 0..self.group_order {
            for i in 0..m {
                for j in 0..m {
                    acc[i][j] += power[i][j];
                }
            }
            power = self.reduce_matrix(mat_mul(&self.sigma, &power)?);
        }
        Ok(self.reduce_matrix(acc))
    }

    /// `σ - 1`.
    pub fn sigma_minus_one(&self) -> Matrix {
        let mut s = self.sigma.clone();
        for (i, row) in s.iter_mut().enumerate() {
            row[i] -= 1;
        }
        s
    }

    pub fn act(&self, v: &[i128]) -> Result<Vector> {
        Ok(self.reduce(&apply(&self.sigma, v)?))
    }

    /// JSON `{"group_order", "free_rank", "torsion", "sigma"}` (plus
    /// `"multiplicative"` when set); `sigma[i][j]` is the `e_i` coefficient of `σ(e_j)`.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "group_order": self.group_order,
            "free_rank": self.free_rank,
            "torsion": self.torsion.iter().map(|&d| d as i64).collect::<Vec<_>>(),
            "sigma": self.sigma.iter().map(|r| r.iter().map(|&x| x as i64).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        if self.multiplicative {
            v["multiplicative"] = Value::Bool(true);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("module JSON: {what}"));
        let n = v.get("group_order").and_then(Value::as_u64).ok_or_else(|| bad("missing group_order"))?;
        let r = v.get("free_rank").and_then(Value::as_u64).unwrap_or(0) as usize;
        let torsion = match v.get("torsion") {
            None => Vec::new(),
            Some(t) => t
                .as_array()
                .ok_or_else(|| bad("torsion must be an array"))?
                .iter()
                .map(|x| x.as_i64().map(|x| x as i128).ok_or_else(|| bad("torsion entries must be integers")))
                .collect::<Result<_>>()?,
        };
        let sigma = v
            .get("sigma")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing sigma"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("sigma rows must be arrays"))?
                    .iter()
                    .map(|x| x.as_i64().map(|x| x as i128).ok_or_else(|| bad("sigma entries must be integers")))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Matrix>>()?;
        let mult = v.get("multiplicative").and_then(Value::as_bool).unwrap_or(false);
        let n = u32::try_from(n).map_err(|_| bad("group_order too large"))?;
        CyclicModule::new(n, r, torsion, sigma, mult)
    }

    /// `{x : (σ-1)x ∈ R}`, the preimage of `A^G`.
    pub fn fixed_lattice(&self) -> Result<Lattice> {
        Lattice::full(self.rank()).preimage(&self.sigma_minus_one(), &self.relations())
    }

    /// `{x : N x ∈ R}`, the preimage of `ker N`.
    pub fn norm_kernel_lattice(&self) -> Result<Lattice> {
        Lattice::full(self.rank()).preimage(&self.norm_matrix()?, &self.relations())
    }

    /// `N Z^m + R`.
    pub fn norm_image_lattice(&self) -> Result<Lattice> {
        let m = self.rank();
        Lattice::full(m).image(&self.norm_matrix()?, m)?.sum(&self.relations())
    }

    /// `(σ-1) Z^m + R`.
    pub fn augmentation_lattice(&self) -> Result<Lattice> {
        let m = self.rank();
        Lattice::full(m).image(&self.sigma_minus_one(), m)?.sum(&self.relations())
    }
}

fn group_from(lattice: &Lattice, sub: &Lattice) -> Result<AbelianGroup> {
    let inv = lattice.quotient_invariants(sub)?;
    Ok(AbelianGroup { invariants: inv.into_iter().map(|d| d as u64).collect(), free_rank: 0 })
}

/// `H^0(G, A) = A^G / N_G A`.
pub fn h0(m: &CyclicModule) -> Result<AbelianGroup> {
    group_from(&m.fixed_lattice()?, &m.norm_image_lattice()?)
}

/// `H^-1(G, A) = ker N_G / I_G A`.
pub fn hminus1(m: &CyclicModule) -> Result<AbelianGroup> {
    group_from(&m.norm_kernel_lattice()?, &m.augmentation_lattice()?)
}

/// `h(G, A) = #H^0 / #H^-1`.
pub fn herbrand_quotient(m: &CyclicModule) -> Result<Ratio<u64>> {
    let a = h0(m)?.order().ok_or(Error::InfiniteQuotient)?;
    let b = hminus1(m)?.order().ok_or(Error::InfiniteQuotient)?;
    Ok(Ratio::new(a, b))
}

/// A `G`-map `A -> B` given by an integer matrix (`rank B` rows, `rank A` columns).
pub type ModuleMap = Matrix;

/// Checks that `f` is a well-defined `G`-homomorphism `A -> B`.
pub fn check_hom(a: &CyclicModule, b: &CyclicModule, f: &ModuleMap) -> Result<()> {
    if f.len() != b.rank() || f.iter().any(|r| r.len() != a.rank()) {
        return Err(Error::NotExact("map has the wrong shape".into()));
    }
    let rb = b.relations();
    for rel in a.relations().basis() {
        if !rb.contains(&apply(f, rel)?)? {
            return Err(Error::NotExact("map does not respect relations".into()));
        }
    }
    let lhs = mat_mul(f, a.sigma())?;
    let rhs = mat_mul(b.sigma(), f)?;
    for j in 0..a.rank() {
        let diff: Vector = (0..b.rank()).map(|i| lhs[i][j] - rhs[i][j]).collect();
        if !rb.contains(&diff)? {
            return Err(Error::NotExact("map is not G-equivariant".into()));
        }
    }
    Ok(())
}

/// Checks that `0 -> A -f-> B -g-> C -> 0` is exact.
pub fn check_exact(a: &CyclicModule, b: &CyclicModule, c: &CyclicModule, f: &ModuleMap, g: &ModuleMap) -> Result<()> {
    if a.group_order != b.group_order || b.group_order != c.group_order {
        return Err(Error::NotExact("modules over different groups".into()));
    }
    check_hom(a, b, f)?;
    check_hom(b, c, g)?;
    let (ra, rb, rc) = (a.relations(), b.relations(), c.relations());
    // f injective: f^{-1}(R_B) = R_A
    if !ra.contains_lattice(&Lattice::full(a.rank()).preimage(f, &rb)?)? {
        return Err(Error::NotExact("first map is not injective".into()));
    }
    // g surjective
    let img_g = Lattice::full(b.rank()).image(g, c.rank())?.sum(&rc)?;
    if img_g.rank() < c.rank() || !img_g.contains_lattice(&Lattice::full(c.rank()))? {
        return Err(Error::NotExact("second map is not surjective".into()));
    }
    // ker g = im f
    let gf = mat_mul(g, f)?;
    for j in 0..a.rank() {
        let col: Vector = gf.iter().map(|r| r[j]).collect();
        if !rc.contains(&col)? {
            return Err(Error::NotExact("composite is not zero".into()));
        }
    }
    let ker_g = Lattice::full(b.rank()).preimage(g, &rc)?;
    let img_f = Lattice::full(a.rank()).image(f, b.rank())?.sum(&rb)?;
    if !img_f.contains_lattice(&ker_g)? {
        return Err(Error::NotExact("kernel of the second map exceeds the image of the first".into()));
    }
    Ok(())
}

/// `h(B) = h(A) h(C)` for an exact sequence `0 -> A -> B -> C -> 0`.
pub fn check_multiplicativity(
    a: &CyclicModule,
    b: &CyclicModule,
    c: &CyclicModule,
    f: &ModuleMap,
    g: &ModuleMap,
) -> Result<bool> {
    check_exact(a, b, c, f, g)?;
    Ok(herbrand_quotient(b)? == herbrand_quotient(a)? * herbrand_quotient(c)?)
}

/// A subquotient `L / S` of the ambient module `Z^m` presented as a
/// [`CyclicModule`], together with the maps relating the two descriptions.
pub struct Presentation {
    pub module: CyclicModule,
    /// Column `i` is the ambient vector of generator `i`.
    pub generators: Matrix,
    lattice: Lattice,
    /// kept columns of `V` and their moduli
    v: Matrix,
    keep: Vec<usize>,
}

impl Presentation {
    /// Coordinates in the presented module of an ambient vector lying in `L`.
    pub fn coordinates(&self, x: &[i128]) -> Result<Vector> {
        let c = self
            .lattice
            .coordinates(x)?
            .ok_or_else(|| Error::InvalidModule("vector outside the presented lattice".into()))?;
        let new: Vector = self
            .keep
            .iter()
            .map(|&j| c.iter().zip(&self.v).map(|(&ci, row)| ci * row[j]).sum())
            .collect();
        Ok(self.module.reduce(&new))
    }
}

/// Presents `L / S` with the action induced by the ambient `σ` (which must
/// preserve both lattices).
pub fn present(lattice: &Lattice, sub: &Lattice, sigma: &Matrix, group_order: u32) -> Result<Presentation> {
    let k = lattice.rank();
    let rel: Matrix = sub
        .basis()
        .iter()
        .map(|b| lattice.coordinates(b)?.ok_or_else(|| Error::InvalidModule("S is not inside L".into())))
        .collect::<Result<_>>()?;
    let s = smith(rel, k)?;
    let mut free = Vec::new();
    let mut tors = Vec::new();
    for (j, &d) in s.diagonal.iter().enumerate() {
        match d {
            0 => free.push(j),
            1 => {}
            _ => tors.push(j),
        }
    }
    let keep: Vec<usize> = free.iter().chain(&tors).copied().collect();
    let torsion: Vec<i128> = tors.iter().map(|&j| s.diagonal[j]).collect();
    // ambient vectors of the new generators: row j of V^{-1} in L-coordinates
    let gens: Vec<Vector> = keep
        .iter()
        .map(|&j| {
            let coords = &s.v_inv[j];
            let mut v = vec![0i128; lattice.dim()];
            for (c, b) in coords.iter().zip(lattice.basis()) {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += c * bi;
                }
            }
            v
        })
        .collect();
    let mut pres = Presentation {
        module: CyclicModule {
            group_order,
            free_rank: free.len(),
            torsion,
            sigma: Vec::new(),
            multiplicative: false,
        },
        generators: Vec::new(),
        lattice: lattice.clone(),
        v: s.v,
        keep,
    };
    let m = pres.keep.len();
    let mut sig = vec![vec![0i128; m]; m];
    for (j, g) in gens.iter().enumerate() {
        let image = pres.coordinates(&apply(sigma, g)?)?;
        for i in 0..m {
            sig[i][j] = image[i];
        }
    }
    let module = CyclicModule::new(group_order, pres.module.free_rank, pres.module.torsion.clone(), sig, false)?;
    pres.module = module;
    pres.generators = (0..lattice.dim()).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    Ok(pres)
}

/// A short exact sequence `0 -> A -f-> B -g-> C -> 0`.
pub struct ShortExactSequence {
    pub a: CyclicModule,
    pub b: CyclicModule,
    pub c: CyclicModule,
    pub f: ModuleMap,
    pub g: ModuleMap,
}

/// The sequence `0 -> <S> -> B -> B/<S> -> 0` for the `G`-submodule
/// generated by `gens`.
pub fn submodule_sequence(b: &CyclicModule, gens: &[Vector]) -> Result<ShortExactSequence> {
    let m = b.rank();
    let mut orbit = Vec::new();
    for g in gens {
        let mut x = b.reduce(g);
        for _ in 0..b.group_order {
            orbit.push(x.clone());
            x = b.act(&x)?;
        }
    }
    let rel = b.relations();
    let sub = Lattice::span(m, orbit)?.sum(&rel)?;
    let pa = present(&sub, &rel, b.sigma(), b.group_order)?;
    let pc = present(&Lattice::full(m), &sub, b.sigma(), b.group_order)?;
    let f = pa.generators.clone();
    let mut g = vec![vec![0i128; m]; pc.module.rank()];
    for j in 0..m {
        let col = pc.coordinates(&unit(m, j))?;
        for (i, x) in col.into_iter().enumerate() {
            g[i][j] = x;
        }
    }
    let f = b.reduce_matrix(f);
    Ok(ShortExactSequence { a: pa.module, b: b.clone(), c: pc.module, f, g })
}

/// The direct sum with the block-diagonal action.
pub fn direct_sum(a: &CyclicModule, b: &CyclicModule) -> Result<CyclicModule> {
    if a.group_order != b.group_order {
        return Err(Error::InvalidModule("direct sum over different groups".into()));
    }
    // order coordinates as free(a), free(b), torsion(a), torsion(b)
    let order: Vec<(usize, usize)> = (0..a.free_rank)
        .map(|i| (0, i))
        .chain((0..b.free_rank).map(|i| (1, i)))
        .chain((a.free_rank..a.rank()).map(|i| (0, i)))
        .chain((b.free_rank..b.rank()).map(|i| (1, i)))
        .collect();
    let m = order.len();
    let mut sigma = vec![vec![0i128; m]; m];
    for (r, &(sr, ir)) in order.iter().enumerate() {
        for (c, &(sc, ic)) in order.iter().enumerate() {
            if sr == sc {
                sigma[r][c] = if sr == 0 { a.sigma[ir][ic] } else { b.sigma[ir][ic] };
            }
        }
    }
    let torsion = a.torsion.iter().chain(&b.torsion).copied().collect();
    CyclicModule::new(a.group_order, a.free_rank + b.free_rank, torsion, sigma, false)
}

/// `A = ⊕_{i<s} A_1` with `σ(a_0, …, a_{s-1}) = (τ a_{s-1}, a_0, …, a_{s-2})`,
/// where `τ` is the action of the generator `σ^s` of `G_1` on `A_1`.
pub fn induced_module(a1: &CyclicModule, s: u32) -> Result<CyclicModule> {
    if s == 0 {
        return Err(Error::InvalidModule("index must be positive".into()));
    }
    let n = a1.group_order * s;
    let m1 = a1.rank();
    let fr = a1.free_rank;
    // coordinate of (copy i, generator j): free ones first, then torsion
    let idx = |i: usize, j: usize| -> usize {
        if j < fr {
            i * fr + j
        } else {
            s as usize * fr + i * (m1 - fr) + (j - fr)
        }
    };
    let m = m1 * s as usize;
    let mut sigma = vec![vec![0i128; m]; m];
    for i in 0..s as usize {
        for j in 0..m1 {
            let col = idx(i, j);
            if i + 1 < s as usize {
                sigma[idx(i + 1, j)][col] = 1;
            } else {
                for r in 0..m1 {
                    sigma[idx(0, r)][col] = a1.sigma[r][j];
                }
            }
        }
    }
    let mut torsion = Vec::new();
    for _ in 0..s {
        torsion.extend_from_slice(&a1.torsion);
    }
    CyclicModule::new(n, fr * s as usize, torsion, sigma, false)
}

/// Verdicts for the two comparison maps of the semilocal theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilocalReport {
    pub h0_iso: bool,
    pub hminus1_iso: bool,
    pub h0: AbelianGroup,
    pub h0_local: AbelianGroup,
    pub hminus1: AbelianGroup,
    pub hminus1_local: AbelianGroup,
}

/// Whether `M: L/S -> L'/S'` (integer matrix) is a well-defined bijection,
/// judged by well-definedness, surjectivity and equal finite orders.
fn induces_iso(l: &Lattice, s: &Lattice, l2: &Lattice, s2: &Lattice, m: &Matrix) -> Result<bool> {
    let dim2 = l2.dim();
    let img_l = l.image(m, dim2)?;
    let img_s = s.image(m, dim2)?;
    if !l2.contains_lattice(&img_l)? || !s2.contains_lattice(&img_s)? {
        return Ok(false);
    }
    if !img_l.sum(s2)?.contains_lattice(l2)? {
        return Ok(false);
    }
    let o1: i128 = l.quotient_invariants(s)?.iter().product();
    let o2: i128 = l2.quotient_invariants(s2)?.iter().product();
    Ok(o1 == o2)
}

/// Compares `H^i(G, A)` with `H^i(G_1, A_1)` for the induced module `A` of
/// `A_1` along a subgroup of index `s`: projection to the first factor for
/// `H^0`, and `a -> Σ a_i` for `H^-1`.
pub fn semilocal_compare(n: u32, s: u32, a1: &CyclicModule) -> Result<SemilocalReport> {
    if s == 0 || n % s != 0 {
        return Err(Error::OutOfRange(format!("index {s} does not divide {n}")));
    }
    if a1.group_order * s != n {
        return Err(Error::InvalidModule(format!(
            "A_1 must be a module over a group of order {}",
            n / s
        )));
    }
    let a = induced_module(a1, s)?;
    let m1 = a1.rank();
    let fr = a1.free_rank;
    let idx = |i: usize, j: usize| -> usize {
        if j < fr {
            i * fr + j
        } else {
            s as usize * fr + i * (m1 - fr) + (j - fr)
        }
    };
    let m = a.rank();
    let mut pi = vec![vec![0i128; m]; m1];
    let mut lam = vec![vec![0i128; m]; m1];
    for j in 0..m1 {
        pi[j][idx(0, j)] = 1;
        for i in 0..s as usize {
            lam[j][idx(i, j)] = 1;
        }
    }
    let h0_iso = induces_iso(
        &a.fixed_lattice()?,
        &a.norm_image_lattice()?,
        &a1.fixed_lattice()?,
        &a1.norm_image_lattice()?,
        &pi,
    )?;
    let hm_iso = induces_iso(
        &a.norm_kernel_lattice()?,
        &a.augmentation_lattice()?,
        &a1.norm_kernel_lattice()?,
        &a1.augmentation_lattice()?,
        &lam,
    )?;
    Ok(SemilocalReport {
        h0_iso,
        hminus1_iso: hm_iso,
        h0: h0(&a)?,
        h0_local: h0(a1)?,
        hminus1: hminus1(&a)?,
        hminus1_local: hminus1(a1)?,
    })
}

/// `F_{Q}^×` (with `Q = q^n`) as a multiplicative module over
/// `G(F_Q/F_q) = <x -> x^q>`: cyclic of order `Q - 1` with `σ` acting as
/// multiplication by `q` on exponents.
pub fn unit_group_module(q: u64, n: u32) -> Result<CyclicModule> {
    let big = (q as i128).checked_pow(n).ok_or(Error::Overflow)?;
    let order = big - 1;
    if order == 1 {
        return CyclicModule::new(n, 0, Vec::new(), Vec::new(), true);
    }
    CyclicModule::new(n, 0, vec![order], vec![vec![q as i128 % order]], true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial(n: u32, r: usize, t: Vec<i128>) -> CyclicModule {
        CyclicModule::trivial(n, r, t).unwrap()
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0(&trivial(2, 1, vec![])).unwrap().invariants, [2]);
        let swap = CyclicModule::new(2, 0, vec![3, 3], vec![vec![0, 1], vec![1, 0]], false).unwrap();
        assert!(h0(&swap).unwrap().is_trivial());
        assert!(h0(&trivial(2, 0, vec![3])).unwrap().is_trivial());
    }

    #[test]
    fn hminus1_examples() {
        assert!(hminus1(&trivial(2, 1, vec![])).unwrap().is_trivial());
        assert!(hminus1(&unit_group_module(2, 2).unwrap()).unwrap().is_trivial());
        assert_eq!(hminus1(&trivial(2, 0, vec![4])).unwrap().invariants, [2]);
    }

    #[test]
    fn herbrand_examples() {
        for n in 1..=8 {
            assert_eq!(herbrand_quotient(&trivial(n, 1, vec![])).unwrap(), Ratio::from_integer(n as u64));
        }
        assert_eq!(herbrand_quotient(&trivial(2, 0, vec![4])).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn invalid_modules() {
        assert!(CyclicModule::new(2, 1, vec![], vec![vec![2]], false).is_err());
        assert!(CyclicModule::new(3, 0, vec![4], vec![vec![3]], false).is_err());
        assert!(CyclicModule::new(2, 1, vec![2], vec![vec![1, 0], vec![1, 1]], false).is_ok());
        assert!(CyclicModule::new(2, 1, vec![2], vec![vec![1, 1], vec![0, 1]], false).is_err());
    }

    #[test]
    fn multiplicativity_examples() {
        // 0 -> Z -2-> Z -> Z/2 -> 0
        let z = trivial(2, 1, vec![]);
        let z2 = trivial(2, 0, vec![2]);
        assert!(check_multiplicativity(&z, &z, &z2, &vec![vec![2]], &vec![vec![1]]).unwrap());
        assert!(check_multiplicativity(&z, &z, &z2, &vec![vec![3]], &vec![vec![1]]).is_err());
        // split sequence
        let a = CyclicModule::new(2, 0, vec![3, 3], vec![vec![0, 1], vec![1, 0]], false).unwrap();
        let b = direct_sum(&a, &z).unwrap();
        let f = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
        let g = vec![vec![1, 0, 0]];
        assert!(check_multiplicativity(&a, &b, &z, &f, &g).unwrap());
    }

    #[test]
    fn submodule_sequences_are_exact() {
        let b = CyclicModule::new(2, 1, vec![4, 6], vec![vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 5]], false).unwrap();
        let ses = submodule_sequence(&b, &[vec![2, 2, 1]]).unwrap();
        check_exact(&ses.a, &ses.b, &ses.c, &ses.f, &ses.g).unwrap();
        assert!(check_multiplicativity(&ses.a, &ses.b, &ses.c, &ses.f, &ses.g).unwrap());
    }

    #[test]
    fn semilocal_examples() {
        for m in [2, 3, 5] {
            let r = semilocal_compare(2, 2, &trivial(1, 0, vec![m])).unwrap();
            assert!(r.h0_iso && r.hminus1_iso);
            assert!(r.h0.is_trivial());
        }
        let neg = CyclicModule::new(2, 0, vec![3], vec![vec![-1]], false).unwrap();
        let r = semilocal_compare(4, 2, &neg).unwrap();
        assert!(r.h0_iso && r.hminus1_iso);
        let r = semilocal_compare(3, 1, &trivial(3, 1, vec![2])).unwrap();
        assert!(r.h0_iso && r.hminus1_iso);
        let r = semilocal_compare(6, 3, &trivial(2, 1, vec![])).unwrap();
        assert!(r.h0_iso && r.hminus1_iso);
        assert_eq!(r.h0.invariants, [2]);
    }
}
