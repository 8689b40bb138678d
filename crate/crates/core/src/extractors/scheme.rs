use std::fmt;

use crate::alphabet::SymbolString;
use crate::error::{Error, Result};
use crate::tree::{BinarizationTree, Role};

/// Digits produced by an extractor, over the scheme's output alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionOutput {
    pub digits: SymbolString,
}

impl ExtractionOutput {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        self.digits.symbols()
    }
}

impl fmt::Display for ExtractionOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.digits.fmt(f)
    }
}

/// A Peres-style recursive extractor defined by a binarization tree.
///
/// Input is cut into blocks of `block_len` symbols; a trailing partial block
/// is dropped. For each block the output nodes above its leaf emit their
/// branch digits (pre-order). Each recurse node collects its branch symbols
/// into an auxiliary stream, and every stream, in pre-order, is extracted
/// again with the same scheme and appended:
///
/// `Ψ(x) = Ψ_1(x) * Ψ(u_1(x)) * .. * Ψ(u_l(x))`, with `Ψ(λ) = λ`.
#[derive(Debug, Clone)]
pub struct Scheme {
    name: String,
    tree: BinarizationTree,
    labels: Vec<String>,
    outputs: Vec<usize>,
    streams: Vec<usize>,
    /// Base digits emitted for each block.
    base: Vec<Vec<u8>>,
    /// `(stream, symbol)` pairs contributed by each block.
    aux: Vec<Vec<(u8, u8)>>,
}

impl Scheme {
    pub fn new(name: impl Into<String>, tree: BinarizationTree) -> Result<Self> {
        let labels = (0..tree.component_count())
            .map(|k| format!("Φ{}", k + 1))
            .collect();
        Self::with_labels(name, tree, labels)
    }

    /// Like [`Scheme::new`] with display names for the components.
    pub fn with_labels(
        name: impl Into<String>,
        tree: BinarizationTree,
        labels: Vec<String>,
    ) -> Result<Self> {
        let name = name.into();
        if tree.block_len() < 2 {
            return Err(Error::InvalidScheme(format!(
                "block length {} is below 2; recursion would not shrink its input",
                tree.block_len()
            )));
        }
        if labels.len() != tree.component_count() {
            return Err(Error::InvalidScheme(format!(
                "{} labels for {} components",
                labels.len(),
                tree.component_count()
            )));
        }
        let m = tree.source_alphabet();
        let streams = tree.components_with_role(Role::Recurse);
        if let Some(&k) = streams.iter().find(|&&k| tree.degree(k) > m) {
            return Err(Error::InvalidScheme(format!(
                "recurse node {} has degree {} but the source alphabet has only {m} symbols",
                labels[k],
                tree.degree(k)
            )));
        }
        if streams.len() > u8::MAX as usize {
            return Err(Error::InvalidScheme("too many recurse nodes".into()));
        }
        let outputs = tree.components_with_role(Role::Output);

        let d = tree.output_alphabet();
        let blocks = tree.block_alphabet();
        let base = (0..blocks)
            .map(|block| {
                let mut digits = Vec::new();
                for &k in &outputs {
                    if let Some(branch) = tree.table(k).get(block) {
                        let width = tree.output_digits(k).expect("output node degree is D^a");
                        push_base_digits(branch as usize, width, d, &mut digits);
                    }
                }
                digits
            })
            .collect();
        let aux = (0..blocks)
            .map(|block| {
                streams
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &k)| tree.table(k).get(block).map(|s| (i as u8, s)))
                    .collect()
            })
            .collect();

        Ok(Self {
            name,
            tree,
            labels,
            outputs,
            streams,
            base,
            aux,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tree(&self) -> &BinarizationTree {
        &self.tree
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn source_alphabet(&self) -> usize {
        self.tree.source_alphabet()
    }

    pub fn block_len(&self) -> usize {
        self.tree.block_len()
    }

    pub fn output_alphabet(&self) -> usize {
        self.tree.output_alphabet()
    }

    /// Output components in pre-order.
    pub fn output_components(&self) -> &[usize] {
        &self.outputs
    }

    /// Recurse components in pre-order, i.e. the order of the auxiliary
    /// streams.
    pub fn stream_components(&self) -> &[usize] {
        &self.streams
    }

    /// Base digits `Ψ_1` of one block given by index.
    pub fn base_digits(&self, block: usize) -> &[u8] {
        &self.base[block]
    }

    /// A copy in which auxiliary stream `stream` (index into
    /// [`Scheme::stream_components`]) is computed but no longer recursed on.
    pub fn without_stream(&self, stream: usize) -> Result<Self> {
        let &component = self.streams.get(stream).ok_or_else(|| {
            Error::OutOfRange(format!("stream {stream} of {} streams", self.streams.len()))
        })?;
        let tree = self.tree.retagged(component, Role::Discard)?;
        Self::with_labels(
            format!("{}-without-{}", self.name, self.labels[component]),
            tree,
            self.labels.clone(),
        )
    }

    fn check_input(&self, x: &SymbolString) -> Result<()> {
        let m = self.source_alphabet();
        if let Some((position, &s)) = x
            .symbols()
            .iter()
            .enumerate()
            .find(|(_, &s)| s as usize >= m)
        {
            return Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                position,
                alphabet: m,
            });
        }
        Ok(())
    }

    fn wrap(&self, digits: Vec<u8>) -> ExtractionOutput {
        ExtractionOutput {
            digits: SymbolString::new(self.output_alphabet(), digits)
                .expect("output digits are below D"),
        }
    }

    /// `Ψ(x)`.
    pub fn extract(&self, x: &SymbolString) -> Result<ExtractionOutput> {
        self.check_input(x)?;
        let mut out = Vec::new();
        self.run(x.symbols(), None, &mut out);
        Ok(self.wrap(out))
    }

    /// `Ψ_ν(x)`: the recursion cut off at depth `depth`, so that `Ψ_0 = λ`
    /// and `Ψ_1` is the base function alone.
    pub fn extract_truncated(&self, x: &SymbolString, depth: usize) -> Result<ExtractionOutput> {
        self.check_input(x)?;
        let mut out = Vec::new();
        self.run(x.symbols(), Some(depth), &mut out);
        Ok(self.wrap(out))
    }

    /// Unchecked extraction on raw symbols, appending to `out`.
    pub(crate) fn extract_into(&self, x: &[u8], out: &mut Vec<u8>) {
        self.run(x, None, out);
    }

    /// Explicit-stack depth-first evaluation. Streams are pushed in reverse so
    /// that they are popped, and their output appended, in pre-order.
    fn run(&self, input: &[u8], depth: Option<usize>, out: &mut Vec<u8>) {
        let b = self.block_len();
        let m = self.source_alphabet();
        let mut pending: Vec<(Vec<u8>, Option<usize>)> = vec![(input.to_vec(), depth)];
        while let Some((symbols, depth)) = pending.pop() {
            if depth == Some(0) || symbols.len() < b {
                continue;
            }
            let mut streams: Vec<Vec<u8>> = vec![Vec::new(); self.streams.len()];
            for block in symbols.chunks_exact(b) {
                let index = block.iter().fold(0usize, |acc, &s| acc * m + s as usize);
                out.extend_from_slice(&self.base[index]);
                for &(stream, symbol) in &self.aux[index] {
                    streams[stream as usize].push(symbol);
                }
            }
            let next_depth = depth.map(|d| d - 1);
            for stream in streams.into_iter().rev() {
                if stream.len() >= b && next_depth != Some(0) {
                    pending.push((stream, next_depth));
                }
            }
        }
    }
}

/// Appends `value` as exactly `width` base-`d` digits, most significant first.
fn push_base_digits(value: usize, width: usize, d: usize, out: &mut Vec<u8>) {
    let start = out.len();
    let mut v = value;
    for _ in 0..width {
        out.push((v % d) as u8);
        v /= d;
    }
    out[start..].reverse();
}
