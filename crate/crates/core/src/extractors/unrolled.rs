use crate::alphabet::SymbolString;
use crate::error::{Error, Result};

fn pairs(x: &[u8]) -> impl Iterator<Item = (u8, u8)> + '_ {
    x.chunks_exact(2).map(|p| (p[0], p[1]))
}

fn psi1(x: &[u8]) -> impl Iterator<Item = u8> + '_ {
    pairs(x).filter(|(a, b)| a != b).map(|(a, _)| a)
}

fn u(x: &[u8]) -> Vec<u8> {
    pairs(x).map(|(a, b)| a ^ b).collect()
}

fn v(x: &[u8]) -> Vec<u8> {
    pairs(x).filter(|(a, b)| a == b).map(|(a, _)| a).collect()
}

fn psi_squared(x: &[u8], out: &mut Vec<u8>) {
    if x.len() < 2 {
        return;
    }
    let ux = u(x);
    let vx = v(x);
    out.extend(psi1(x));
    out.extend(psi1(&ux));
    out.extend(psi1(&vx));
    for stream in [u(&ux), v(&ux), u(&vx), v(&vx)] {
        psi_squared(&stream, out);
    }
}

/// Two levels of the Peres recursion unrolled into one step:
///
/// `Ψ²(x) = Ψ_1(x) * Ψ_1(u(x)) * Ψ_1(v(x)) * Ψ²(uu(x)) * Ψ²(vu(x)) * Ψ²(uv(x)) * Ψ²(vv(x))`.
///
/// It emits the same pieces as the ordinary recursion, so output lengths
/// agree for every input, but the pieces are concatenated in a different
/// order.
pub fn double_unrolled_peres2(x: &SymbolString) -> Result<SymbolString> {
    if let Some((position, &s)) = x.symbols().iter().enumerate().find(|(_, &s)| s > 1) {
        return Err(Error::SymbolOutOfRange {
            symbol: s as usize,
            position,
            alphabet: 2,
        });
    }
    let mut out = Vec::new();
    psi_squared(x.symbols(), &mut out);
    SymbolString::new(2, out)
}
