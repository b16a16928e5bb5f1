//! Dloussky sequences of intermediate Kato surfaces.
//!
//! A sequence is a cyclic word of integers `>= 2` (opposite self-intersection
//! numbers in order of creation) grouped into singular blocks
//! `s_k = (k+2, 2, ..., 2)` of length `k` and maximal regular blocks
//! `r_m = (2, ..., 2)` of length `m`. An intermediate sequence splits into
//! simple components `[s_{k_0} ... s_{k_{p-1}} r_m]`, one per branch.
//!
//! Text form: `[s1 s2 r1 | s1 r1]`. Entry form: `3,4,2,2,3,2`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result, SurfaceClass};

/// One simple component `[s_{k_0} ... s_{k_{p-1}} r_m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleComponent {
    singular: Vec<u32>,
    regular_len: u32,
}

impl SimpleComponent {
    pub fn new(singular: Vec<u32>, regular_len: u32) -> Result<Self> {
        if singular.is_empty() {
            return Err(Error::NotIntermediate(SurfaceClass::Enoki));
        }
        if singular.contains(&0) {
            return Err(Error::ZeroLength("singular"));
        }
        if regular_len == 0 {
            return Err(Error::ZeroLength("regular"));
        }
        Ok(SimpleComponent {
            singular,
            regular_len,
        })
    }

    /// The singular lengths `k_0 .. k_{p-1}`.
    pub fn singular(&self) -> &[u32] {
        &self.singular
    }

    /// The regular length `m`.
    pub fn regular_len(&self) -> u32 {
        self.regular_len
    }

    /// Number of black nodes `p`.
    pub fn black_count(&self) -> usize {
        self.singular.len()
    }

    pub fn len(&self) -> usize {
        self.singular.iter().map(|&k| k as usize).sum::<usize>() + self.regular_len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of `k_i` over even `i`: number of branch curves.
    pub fn alpha(&self) -> u64 {
        self.singular.iter().step_by(2).map(|&k| k as u64).sum()
    }

    /// Sum of `k_i` over odd `i`.
    pub fn beta(&self) -> u64 {
        self.singular.iter().skip(1).step_by(2).map(|&k| k as u64).sum()
    }

    /// Sum of the singular lengths.
    pub fn singular_total(&self) -> usize {
        self.singular.iter().map(|&k| k as usize).sum()
    }

    pub fn expand(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len());
        for &k in &self.singular {
            out.push(k + 2);
            out.extend(std::iter::repeat_n(2, k as usize - 1));
        }
        out.extend(std::iter::repeat_n(2, self.regular_len as usize));
        out
    }
}

impl fmt::Display for SimpleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.singular {
            write!(f, "s{} ", k)?;
        }
        write!(f, "r{}", self.regular_len)
    }
}

/// An intermediate Dloussky sequence: a nonempty list of simple components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DlousskySequence {
    components: Vec<SimpleComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceStats {
    pub b2: u64,
    pub sigma: u64,
    pub alpha_per_component: Vec<u64>,
    pub beta_per_component: Vec<u64>,
    pub b2_branches: u64,
    pub b2_cycle: u64,
    pub m_total: u64,
    pub branch_count: usize,
}

impl DlousskySequence {
    pub fn new(components: Vec<SimpleComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("a sequence needs at least one component".into()));
        }
        Ok(DlousskySequence { components })
    }

    /// Shorthand for tests and examples: `from_parts(&[(&[1, 2], 1)])`.
    pub fn from_parts(parts: &[(&[u32], u32)]) -> Result<Self> {
        let components = parts
            .iter()
            .map(|(ks, m)| SimpleComponent::new(ks.to_vec(), *m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    pub fn components(&self) -> &[SimpleComponent] {
        &self.components
    }

    /// Number of branches `N`.
    pub fn branch_count(&self) -> usize {
        self.components.len()
    }

    /// `b_2(S)`, the number of curves.
    pub fn b2(&self) -> usize {
        self.components.iter().map(SimpleComponent::len).sum()
    }

    /// Total regular length `m = sum m_f`.
    pub fn m_total(&self) -> u64 {
        self.components.iter().map(|c| c.regular_len as u64).sum()
    }

    /// Start position of each component in the expanded entry list.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.components
            .iter()
            .map(|c| {
                let o = acc;
                acc += c.len();
                o
            })
            .collect()
    }

    pub fn expand(&self) -> Vec<u32> {
        self.components.iter().flat_map(|c| c.expand()).collect()
    }

    pub fn stats(&self) -> SequenceStats {
        let alpha: Vec<u64> = self.components.iter().map(SimpleComponent::alpha).collect();
        let beta: Vec<u64> = self.components.iter().map(SimpleComponent::beta).collect();
        let m_total = self.m_total();
        let b2_branches = alpha.iter().sum();
        let b2_cycle = beta.iter().sum::<u64>() + m_total;
        SequenceStats {
            b2: self.b2() as u64,
            sigma: self.expand().iter().map(|&e| e as u64).sum(),
            alpha_per_component: alpha,
            beta_per_component: beta,
            b2_branches,
            b2_cycle,
            m_total,
            branch_count: self.components.len(),
        }
    }

    /// Cyclic rotation of the component list by `r` places to the left.
    pub fn rotated(&self, r: usize) -> Self {
        let mut components = self.components.clone();
        let n = components.len();
        components.rotate_left(r % n);
        DlousskySequence { components }
    }

    /// Lexicographically least rotation of the component list, comparing
    /// components by their expanded entries.
    pub fn canonical_form(&self) -> Self {
        let keys: Vec<Vec<u32>> = self.components.iter().map(|c| c.expand()).collect();
        let best = least_rotation(&keys);
        self.rotated(best)
    }

    pub fn is_canonical(&self) -> bool {
        let keys: Vec<Vec<u32>> = self.components.iter().map(|c| c.expand()).collect();
        let n = keys.len();
        (1..n).all(|r| rotation_cmp(&keys, r, 0) != std::cmp::Ordering::Less)
    }
}

fn rotation_cmp<T: Ord>(items: &[T], a: usize, b: usize) -> std::cmp::Ordering {
    let n = items.len();
    for i in 0..n {
        let ord = items[(a + i) % n].cmp(&items[(b + i) % n]);
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

fn least_rotation<T: Ord>(items: &[T]) -> usize {
    (1..items.len()).fold(0, |best, r| {
        if rotation_cmp(items, r, best) == std::cmp::Ordering::Less {
            r
        } else {
            best
        }
    })
}

impl fmt::Display for DlousskySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str("]")
    }
}

impl FromStr for DlousskySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_text(s)
    }
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a decimal integer");
        }
        // digits only, so the slice is valid UTF-8
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<u32>().or_else(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }
}

/// Parse the bracketed text form.
///
/// Components are separated by `|`; a component may also start directly
/// after the previous `r` block, so `[s1 r1 s1 r1]` is accepted as well.
pub fn parse_text(text: &str) -> Result<DlousskySequence> {
    let mut lx = Lexer {
        bytes: text.as_bytes(),
        pos: 0,
    };
    if lx.peek() != Some(b'[') {
        return lx.error("expected '['");
    }
    lx.pos += 1;

    // Collected as raw (singular, Option<regular>) so that class hints can
    // be reported before zero-length or shape errors on other components.
    let mut raw: Vec<(Vec<u32>, Option<u32>)> = Vec::new();
    let mut singular: Vec<u32> = Vec::new();
    let mut open = false;
    let mut zero: Option<&'static str> = None;
    let mut closed = false;

    loop {
        match lx.peek() {
            Some(b's') => {
                lx.pos += 1;
                let k = lx.int()?;
                if k == 0 {
                    zero.get_or_insert("singular");
                }
                singular.push(k);
                open = true;
            }
            Some(b'r') => {
                lx.pos += 1;
                let m = lx.int()?;
                if m == 0 {
                    zero.get_or_insert("regular");
                }
                if !open && raw.last().is_some_and(|(_, r)| r.is_some()) && singular.is_empty() {
                    // `r a r b` without a separator: regular blocks are maximal
                    let prev_sep = lx.bytes[..lx.pos].iter().rev().find(|b| !b.is_ascii_whitespace() && !b.is_ascii_digit() && **b != b'r');
                    if prev_sep != Some(&b'|') {
                        return lx.error("two regular sequences in a row");
                    }
                }
                raw.push((std::mem::take(&mut singular), Some(m)));
                open = false;
            }
            Some(b'|') => {
                lx.pos += 1;
                if open {
                    raw.push((std::mem::take(&mut singular), None));
                    open = false;
                } else if raw.is_empty() || matches!(lx.peek(), Some(b'|') | Some(b']')) {
                    return lx.error("empty component");
                }
            }
            Some(b']') => {
                lx.pos += 1;
                if open {
                    raw.push((std::mem::take(&mut singular), None));
                }
                closed = true;
                break;
            }
            Some(c) => return lx.error(format!("unexpected character '{}'", c as char)),
            None => break,
        }
    }
    if !closed {
        return lx.error("missing ']'");
    }
    if lx.peek().is_some() {
        return lx.error("trailing characters after ']'");
    }
    if raw.is_empty() {
        return lx.error("empty sequence");
    }

    if raw.iter().any(|(s, _)| s.is_empty()) {
        return Err(Error::NotIntermediate(SurfaceClass::Enoki));
    }
    if raw.iter().any(|(_, r)| r.is_none()) {
        return Err(Error::NotIntermediate(SurfaceClass::InoueHirzebruch));
    }
    if let Some(what) = zero {
        return Err(Error::ZeroLength(what));
    }
    let components = raw
        .into_iter()
        .map(|(s, r)| SimpleComponent::new(s, r.unwrap()))
        .collect::<Result<Vec<_>>>()?;
    DlousskySequence::new(components)
}

/// Parse a comma-separated entry list such as `4,2,2,2`.
pub fn parse_entries(text: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let trimmed = part.trim();
        let v: u32 = trimmed.parse().map_err(|_| Error::Syntax {
            position: offset,
            message: format!("'{}' is not a decimal integer", trimmed),
        })?;
        if v < 2 {
            return Err(Error::Syntax {
                position: offset,
                message: format!("entry {} is smaller than 2", v),
            });
        }
        out.push(v);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Accept either the bracketed text form or an entry list.
pub fn parse_input(text: &str) -> Result<DlousskySequence> {
    if text.trim_start().starts_with('[') {
        parse_text(text)
    } else {
        decompose_entries(&parse_entries(text)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Singular(u32),
    Regular(u32),
}

/// Group a cyclic entry list into singular and maximal regular blocks and
/// return the canonical representative.
pub fn decompose_entries(entries: &[u32]) -> Result<DlousskySequence> {
    if entries.is_empty() {
        return Err(Error::InvalidArgument("empty entry list".into()));
    }
    if let Some(&bad) = entries.iter().find(|&&e| e < 2) {
        return Err(Error::InvalidArgument(format!("entry {} is smaller than 2", bad)));
    }
    let Some(start) = entries.iter().position(|&e| e >= 3) else {
        return Err(Error::NotIntermediate(SurfaceClass::Enoki));
    };
    let b = entries.len();
    let word: Vec<u32> = (0..b).map(|i| entries[(start + i) % b]).collect();

    let mut blocks = Vec::new();
    let mut i = 0;
    while i < b {
        let v = word[i];
        if v >= 3 {
            let k = (v - 2) as usize;
            if i + k > b {
                return Err(Error::MalformedCycle(format!(
                    "s{} needs {} trailing 2s but the cycle closes first",
                    k,
                    k - 1
                )));
            }
            if let Some(j) = (i + 1..i + k).find(|&j| word[j] != 2) {
                return Err(Error::MalformedCycle(format!(
                    "entry {} appears inside s{} after {} of its {} 2s",
                    word[j],
                    k,
                    j - i - 1,
                    k - 1
                )));
            }
            blocks.push(Block::Singular(k as u32));
            i += k;
        } else {
            let run = word[i..].iter().take_while(|&&e| e == 2).count();
            blocks.push(Block::Regular(run as u32));
            i += run;
        }
    }

    let Some(first_regular) = blocks.iter().position(|b| matches!(b, Block::Regular(_))) else {
        return Err(Error::NotIntermediate(SurfaceClass::InoueHirzebruch));
    };
    let n = blocks.len();
    let mut components = Vec::new();
    let mut singular = Vec::new();
    for t in 0..n {
        match blocks[(first_regular + 1 + t) % n] {
            Block::Singular(k) => singular.push(k),
            Block::Regular(m) => {
                components.push(SimpleComponent::new(std::mem::take(&mut singular), m)?);
            }
        }
    }
    Ok(DlousskySequence::new(components)?.canonical_form())
}

/// All simple components with `len() == total`, in a fixed order.
fn components_of_length(total: usize) -> Vec<SimpleComponent> {
    fn compositions(n: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 1..=n {
            prefix.push(part as u32);
            compositions(n - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for m in (1..total).rev() {
        let mut singulars = Vec::new();
        compositions(total - m, &mut Vec::new(), &mut singulars);
        for s in singulars {
            out.push(SimpleComponent {
                singular: s,
                regular_len: m as u32,
            });
        }
    }
    out
}

/// Every canonical intermediate sequence with `b_2 = b2`, each rotation
/// class exactly once.
pub fn enumerate_sequences(b2: usize) -> Vec<DlousskySequence> {
    let by_len: Vec<Vec<SimpleComponent>> = (0..=b2).map(components_of_length).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();

    fn walk(
        remaining: usize,
        by_len: &[Vec<SimpleComponent>],
        stack: &mut Vec<SimpleComponent>,
        out: &mut Vec<DlousskySequence>,
    ) {
        if remaining == 0 {
            let seq = DlousskySequence {
                components: stack.clone(),
            };
            if seq.is_canonical() {
                out.push(seq);
            }
            return;
        }
        for len in 2..=remaining {
            if remaining - len == 1 {
                continue;
            }
            for c in &by_len[len] {
                stack.push(c.clone());
                walk(remaining - len, by_len, stack, out);
                stack.pop();
            }
        }
    }

    if b2 >= 2 {
        walk(b2, &by_len, &mut stack, &mut out);
    }
    out
}
