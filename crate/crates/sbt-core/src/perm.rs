//! The circular permutation algebra underlying everything else.
//!
//! A chromosome `π = [π1 … πn]` over `{1..n}` is represented by the
//! `(n+1)`-cycle `π̂ = (0 π1 … πn)` acting on `{0..n}`, and the sorted order
//! by `ι̂ = (0 1 … n)`.  A block exchange is the left-multiplication of `π̂`
//! by a 3-cycle `τ` whose symbols occur in `τ` in the same cyclic order as
//! in `π̂`; such a `τ` is *applicable*, and applying it keeps the permutation
//! an `(n+1)`-cycle.  Products compose right-to-left: `(αβ)(x) = α(β(x))`.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A permutation of `{0..m-1}` stored as an image table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity on `m` symbols.
    pub fn identity(m: usize) -> Self {
        Permutation { images: (0..m).collect() }
    }

    /// Builds a permutation from its image table, rejecting anything that is
    /// not a bijection of `{0..m-1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m {
                return Err(Error::Malformed(format!(
                    "image {x} out of range for {m} symbols"
                )));
            }
            if seen[x] {
                return Err(Error::Malformed(format!("image {x} appears twice")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `{0..m-1}` from pairwise-disjoint cycles.
    pub fn from_disjoint_cycles(m: usize, cycles: &[Cycle]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut seen = vec![false; m];
        for cycle in cycles {
            for (&a, &b) in cycle.pairs() {
                if a >= m {
                    return Err(Error::Malformed(format!(
                        "cycle symbol {a} out of range for {m} symbols"
                    )));
                }
                if seen[a] {
                    return Err(Error::Malformed(format!(
                        "symbol {a} appears in two cycles"
                    )));
                }
                seen[a] = true;
                images[a] = b;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle text such as `(0 3 5)(1 7)`; `()` is the
    /// identity.  The symbol set is `{0..m-1}` with `m` the given size.
    pub fn parse_cycles(text: &str, m: usize) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        Permutation::from_disjoint_cycles(m, &cycles)
    }

    /// Number of symbols acted on (the `m` in `{0..m-1}`).
    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of a single symbol.
    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    /// The raw image table.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Functional composition `self ∘ other`: `x ↦ self(other(x))`.
    /// This matches product notation, where `αβ` applies `β` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch { left: self.size(), right: other.size() });
        }
        let images = other.images.iter().map(|&x| self.images[x]).collect();
        Ok(Permutation { images })
    }

    /// The group inverse.
    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `true` iff the permutation is a product of an even number of
    /// 2-cycles.  Computed from the cycle structure: each `κ`-cycle
    /// contributes `κ − 1` transpositions.
    pub fn is_even(&self) -> bool {
        let decomposition = self.cycle_decomposition();
        (self.size() - decomposition.cycle_count()).is_multiple_of(2)
    }

    /// The unique disjoint cycle decomposition, cycles ordered by their
    /// smallest symbol and each cycle written smallest-symbol-first.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let m = self.size();
        let mut seen = vec![false; m];
        let mut cycles = Vec::new();
        let mut odd_count = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                orbit.push(x);
                x = self.images[x];
            }
            if orbit.len() % 2 == 1 {
                odd_count += 1;
            }
            cycles.push(Cycle { symbols: orbit });
        }
        CycleDecomposition { size: m, cycles, odd_count }
    }
}

impl fmt::Display for Permutation {
    /// Canonical cycle text with fixed elements omitted; the identity
    /// prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_decomposition())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}] {}", self.size(), self)
    }
}

/// A single cycle `(c1 c2 … cκ)`, stored in the canonical rotation that
/// puts the smallest symbol first.  Two `Cycle` values are equal exactly
/// when they denote the same cyclic sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    symbols: Vec<usize>,
}

impl Cycle {
    /// Builds a cycle from its symbols in cyclic order.  The symbols must
    /// be distinct and non-empty; the rotation is canonicalized.
    pub fn new(symbols: Vec<usize>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Malformed("cycle with no symbols".into()));
        }
        let mut sorted = symbols.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            let dup = sorted.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
            return Err(Error::Malformed(format!(
                "symbol {dup} repeated inside a cycle"
            )));
        }
        let min_at = symbols
            .iter()
            .enumerate()
            .min_by_key(|&(_, &s)| s)
            .map(|(i, _)| i)
            .unwrap();
        let mut canonical = symbols;
        canonical.rotate_left(min_at);
        Ok(Cycle { symbols: canonical })
    }

    /// Convenience constructor for the ubiquitous 3-cycle.
    pub fn three(a: usize, b: usize, c: usize) -> Result<Self> {
        Cycle::new(vec![a, b, c])
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a cycle always moves through at least one symbol
    }

    /// Symbols in canonical cyclic order (smallest first).
    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn contains(&self, symbol: usize) -> bool {
        self.symbols.contains(&symbol)
    }

    /// The inverse cycle: same symbols traversed backwards.
    pub fn inverse(&self) -> Cycle {
        let mut symbols = self.symbols.clone();
        symbols[1..].reverse();
        Cycle { symbols }
    }

    /// Successive `(x, next(x))` pairs, wrapping around.
    fn pairs(&self) -> impl Iterator<Item = (&usize, &usize)> {
        let next = self.symbols.iter().cycle().skip(1);
        self.symbols.iter().zip(next).take(self.symbols.len())
    }

    /// Embeds the cycle into `S_m` as a permutation fixing everything else.
    pub fn to_permutation(&self, m: usize) -> Result<Permutation> {
        Permutation::from_disjoint_cycles(m, std::slice::from_ref(self))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

// Cycles serialize as their display form, e.g. "(1 20 10)" — the same
// notation the parsers accept, so reports stay round-trippable by hand.
impl serde::Serialize for Cycle {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The disjoint cycle decomposition of a permutation of `{0..m-1}`,
/// including its 1-cycles.  Cycles are ordered by smallest symbol.
#[derive(Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    size: usize,
    cycles: Vec<Cycle>,
    odd_count: usize,
}

impl CycleDecomposition {
    /// Symbol-set size `m` of the decomposed permutation.
    pub fn size(&self) -> usize {
        self.size
    }

    /// All cycles, 1-cycles included.
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Number of odd-*length* cycles, 1-cycles included.  This is the
    /// `c°odd` that drives the 3-norm and every lower bound in the crate.
    pub fn odd_count(&self) -> usize {
        self.odd_count
    }

    /// Cycles of length ≥ 2, i.e. the ones that actually move symbols.
    pub fn moving_cycles(&self) -> impl Iterator<Item = &Cycle> {
        self.cycles.iter().filter(|c| c.len() > 1)
    }

    /// Multiplies the cycles back together; the result always equals the
    /// permutation that was decomposed.
    pub fn rebuild(&self) -> Permutation {
        Permutation::from_disjoint_cycles(self.size, &self.cycles)
            .expect("a decomposition's cycles are disjoint by construction")
    }

    /// Cycle text with fixed elements written out, e.g. `(0 2)(1)(3)`.
    pub fn to_string_with_fixed(&self) -> String {
        self.cycles.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for CycleDecomposition {
    /// Fixed elements are omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.moving_cycles() {
            write!(f, "{cycle}")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The `(n+1)`-cycle `π̂ = (0 π1 … πn)` modeling the chromosome
/// `π = [π1 … πn]`.  Always a single cycle through all of `{0..n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtendedPermutation {
    one_line: Vec<usize>,
    perm: Permutation,
}

impl ExtendedPermutation {
    /// `ι̂ = (0 1 … n)`, the sorted chromosome on `n` genes.
    pub fn identity(n: usize) -> Self {
        ExtendedPermutation::from_one_line((1..=n).collect())
            .expect("1..n is a permutation of itself")
    }

    /// Builds `π̂` from the one-line form `[π1 … πn]`, a permutation of
    /// `{1..n}`.  `n = 0` is legal and yields `ι̂` on the single symbol 0.
    pub fn from_one_line(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &x in &one_line {
            if x == 0 || x > n {
                return Err(Error::Malformed(format!(
                    "symbol {x} out of range 1..={n} in one-line form"
                )));
            }
            if seen[x] {
                return Err(Error::Malformed(format!(
                    "symbol {x} duplicated in one-line form"
                )));
            }
            seen[x] = true;
        }
        let mut images = vec![0; n + 1];
        let mut prev = 0;
        for &x in &one_line {
            images[prev] = x;
            prev = x;
        }
        images[prev] = 0;
        Ok(ExtendedPermutation { one_line, perm: Permutation { images } })
    }

    /// Reinterprets a permutation of `{0..n}` as `π̂`, requiring it to be a
    /// single `(n+1)`-cycle.
    pub fn from_permutation(perm: Permutation) -> Result<Self> {
        let m = perm.size();
        let mut one_line = Vec::with_capacity(m.saturating_sub(1));
        let mut x = perm.image(0);
        while x != 0 {
            one_line.push(x);
            x = perm.image(x);
        }
        if one_line.len() + 1 != m {
            return Err(Error::Domain(format!(
                "expected a single {m}-cycle, found {}",
                perm.cycle_decomposition()
            )));
        }
        Ok(ExtendedPermutation { one_line, perm })
    }

    /// Parses the external one-line text form: whitespace-separated symbols
    /// with optional surrounding brackets, e.g. `[5 4 3 2 1]` or `5 4 3 2 1`.
    pub fn parse_one_line(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
            (Some(rest), Some(_)) => &rest[..rest.len() - 1],
            (None, None) => trimmed,
            _ => {
                return Err(Error::Malformed(
                    "unbalanced brackets around one-line form".into(),
                ))
            }
        };
        let mut one_line = Vec::new();
        for token in inner.split_whitespace() {
            let x: usize = token.parse().map_err(|_| {
                Error::Malformed(format!("`{token}` is not a symbol"))
            })?;
            one_line.push(x);
        }
        ExtendedPermutation::from_one_line(one_line)
    }

    /// Number of genes `n`; the cycle itself acts on `n + 1` symbols.
    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    /// Symbol-set size `n + 1`.
    pub fn size(&self) -> usize {
        self.one_line.len() + 1
    }

    /// The one-line form `[π1 … πn]`.
    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// The underlying permutation of `{0..n}`.
    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    /// The cycle sequence `0, π1, …, πn`: the symbols of `π̂` in cyclic
    /// order, anchored at 0.
    pub fn cycle_sequence(&self) -> Vec<usize> {
        let mut seq = Vec::with_capacity(self.size());
        seq.push(0);
        seq.extend_from_slice(&self.one_line);
        seq
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// The external one-line text form, e.g. `[5 4 3 2 1]`.
    pub fn one_line_string(&self) -> String {
        let body = self
            .one_line
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!("[{body}]")
    }

    /// The cycle text form `(0 π1 … πn)`.
    pub fn cycle_string(&self) -> String {
        Cycle::new(self.cycle_sequence())
            .expect("cycle sequence symbols are distinct")
            .to_string()
    }

    /// The product `σ̂ = ι̂π̂⁻¹`, whose cycle structure governs sorting.
    /// Pointwise this is `x ↦ π̂⁻¹(x) + 1 (mod n+1)`.
    pub fn sigma_pi_inv(&self) -> Permutation {
        let m = self.size();
        let inv = self.perm.inverse();
        let images = (0..m).map(|x| (inv.image(x) + 1) % m).collect();
        Permutation { images }
    }

    /// Positions of each symbol along the cycle sequence of `π̂`:
    /// `position_of[s[t]] = t`.  The building block for applicability.
    fn cycle_positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.size()];
        for (i, &x) in self.one_line.iter().enumerate() {
            pos[x] = i + 1;
        }
        pos
    }

    /// Whether the 3-cycle `τ` lists its symbols in the same cyclic order
    /// they have in `π̂`, which is exactly when `τπ̂` is again a single
    /// `(n+1)`-cycle.
    ///
    /// # Panics
    /// If `τ` is not a 3-cycle over `{0..n}` (a contract violation, not an
    /// operational error).
    pub fn is_applicable(&self, tau: &Cycle) -> bool {
        let [a, b, c] = check_three_cycle(tau, self.size());
        let pos = self.cycle_positions();
        cyclically_increasing(pos[a], pos[b], pos[c])
    }

    /// Left-multiplies by `τ`, i.e. performs the block exchange `τπ̂`.
    /// Fails with [`Error::NotApplicable`] — carrying the broken product's
    /// decomposition — when `τ` does not respect the cyclic order of `π̂`.
    ///
    /// # Panics
    /// As [`is_applicable`](Self::is_applicable), if `τ` is malformed.
    pub fn apply(&self, tau: &Cycle) -> Result<ExtendedPermutation> {
        check_three_cycle(tau, self.size());
        let tau_perm = tau
            .to_permutation(self.size())
            .expect("3-cycle symbols already validated");
        let product = tau_perm
            .compose(&self.perm)
            .expect("same symbol set by construction");
        ExtendedPermutation::from_permutation(product).map_err(|_| {
            let product = tau_perm
                .compose(&self.perm)
                .expect("same symbol set by construction");
            Error::NotApplicable {
                tau: tau.clone(),
                product: product.cycle_decomposition(),
            }
        })
    }

    /// All applicable 3-cycles, exactly one per symbol triple, ordered by
    /// the sorted triple `(a, b, c)`, `a < b < c`.  For each triple the
    /// applicable orientation is `(a b c)` or `(a c b)`, never both.
    pub fn applicable_moves(&self) -> Vec<Cycle> {
        let m = self.size();
        let pos = self.cycle_positions();
        let mut moves = Vec::with_capacity(m * (m - 1) * (m.saturating_sub(2)) / 6);
        for a in 0..m {
            for b in (a + 1)..m {
                for c in (b + 1)..m {
                    let symbols = if cyclically_increasing(pos[a], pos[b], pos[c]) {
                        vec![a, b, c]
                    } else {
                        vec![a, c, b]
                    };
                    moves.push(Cycle { symbols });
                }
            }
        }
        moves
    }
}

impl fmt::Display for ExtendedPermutation {
    /// The one-line text form; use [`cycle_string`](Self::cycle_string)
    /// for the `(0 …)` view.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line_string())
    }
}

impl fmt::Debug for ExtendedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtendedPermutation {}", self.one_line_string())
    }
}

impl FromStr for ExtendedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExtendedPermutation::parse_one_line(s)
    }
}

/// `true` iff positions `i, j, k` are in ascending cyclic order, i.e. some
/// rotation of `(i, j, k)` is strictly increasing.  Positions must be
/// pairwise distinct, which holds for positions of distinct symbols.
pub(crate) fn cyclically_increasing(i: usize, j: usize, k: usize) -> bool {
    (i < j && j < k) || (j < k && k < i) || (k < i && i < j)
}

/// Validates a 3-cycle over `{0..m-1}` and returns its symbols in cycle
/// order.  Contract violations panic: every caller constructs `τ` from
/// symbols it already bounds-checked.
fn check_three_cycle(tau: &Cycle, m: usize) -> [usize; 3] {
    assert_eq!(tau.len(), 3, "applicability is defined for 3-cycles, got {tau}");
    let s = tau.symbols();
    for &x in s {
        assert!(x < m, "symbol {x} of {tau} out of range for {m} symbols");
    }
    [s[0], s[1], s[2]]
}

/// Parses a list of cycles like `(0 3 5)(1 7)`; whitespace between cycles
/// is ignored and `()` denotes the empty list (identity).
pub fn parse_cycle_list(text: &str) -> Result<Vec<Cycle>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(after_open) = rest.strip_prefix('(') else {
            return Err(Error::Malformed(format!(
                "expected `(` at `{}`",
                rest.chars().take(12).collect::<String>()
            )));
        };
        let Some(close) = after_open.find(')') else {
            return Err(Error::Malformed("unclosed `(` in cycle text".into()));
        };
        let body = &after_open[..close];
        let mut symbols = Vec::new();
        for token in body.split_whitespace() {
            let x: usize = token.parse().map_err(|_| {
                Error::Malformed(format!("`{token}` is not a symbol"))
            })?;
            symbols.push(x);
        }
        if !symbols.is_empty() {
            cycles.push(Cycle::new(symbols)?);
        }
        rest = after_open[close + 1..].trim_start();
    }
    Ok(cycles)
}
