use crate::error::{Error, Result};
use crate::hat;
use crate::stream::{Lcp, PointStream};
use crate::symbol::Symbol;

/// Least index below `cap` where `x` and `y` differ.
pub fn disagreement_witness(x: &PointStream, y: &PointStream, cap: u64) -> Option<u64> {
    match x.lcp_length(y, cap) {
        Lcp::DiffersAt(i) => Some(i),
        Lcp::AtLeastCap => None,
    }
}

/// Checks that the first `cap` symbols of `x` lie in `{low, high}` and that
/// both occur.
pub fn certify_two_symbol(x: &PointStream, low: Symbol, high: Symbol, cap: u64) -> Result<()> {
    let mut seen = [false; 2];
    for s in x.cursor().take(cap as usize) {
        if s == low {
            seen[0] = true;
        } else if s == high {
            seen[1] = true;
        } else {
            return Err(Error::BaseOutsideAlphabet {
                symbol: s.0,
                low: low.0,
                high: high.0,
            });
        }
    }
    if seen == [true, true] {
        Ok(())
    } else {
        Err(Error::ConstantBase { cap })
    }
}

/// Hat positions where two encodings agree on `K` (`nu`) or disagree (`mu`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoints {
    pub nu: Vec<u64>,
    pub mu: Vec<u64>,
}

/// The first `count` checkpoint positions for the hat encodings of `x` and
/// `y`. `nu` holds the safe-symbol positions of each block; `mu` holds every
/// hat position whose base symbols differ, in increasing order. Fails unless
/// the bases differ somewhere below `cap`.
pub fn checkpoint_indices(x: &PointStream, y: &PointStream, count: usize, cap: u64) -> Result<Checkpoints> {
    let first = disagreement_witness(x, y, cap).ok_or(Error::NoDisagreement { cap })?;
    let nu = (0..count as u64).map(hat::safe_position).collect();
    let mut mu = Vec::with_capacity(count);
    let mut differs: Vec<bool> = Vec::new();
    let mut block = first;
    while mu.len() < count {
        while differs.len() as u64 <= block {
            let k = differs.len() as u64;
            differs.push(x.symbol_at(k) != y.symbol_at(k));
        }
        let start = hat::block_start(block);
        mu.extend(
            differs
                .iter()
                .enumerate()
                .filter(|(_, &d)| d)
                .map(|(k, _)| start + k as u64)
                .take(count - mu.len()),
        );
        block += 1;
    }
    Ok(Checkpoints { nu, mu })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::hat_encode;
    use crate::symbol::Word;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let x = PointStream::periodic(&Word::from(&[2u64, 3][..])).unwrap();
        let y = PointStream::periodic(&Word::from(&[3u64, 3][..])).unwrap();
        let c = checkpoint_indices(&x, &y, 4, 10).unwrap();
        assert_eq!(c.nu, vec![1, 4, 8, 13]);
        assert_eq!(c.mu, vec![0, 2, 5, 7]);

        let y = PointStream::periodic(&Word::from(&[3u64, 2][..])).unwrap();
        let c = checkpoint_indices(&x, &y, 4, 10).unwrap();
        assert_eq!(c.mu, vec![0, 2, 3, 5]);

        assert_eq!(
            checkpoint_indices(&x, &x, 4, 100),
            Err(Error::NoDisagreement { cap: 100 })
        );
        assert_eq!(disagreement_witness(&x, &x, 1000), None);
    }

    #[test]
    fn offset_zero_disagreement() {
        // differ only at base index 0: one μ per block, at its start
        let x = PointStream::eventually_periodic(&Word::from(&[2u64][..]), &Word::from(&[3u64][..]), crate::stream::StreamKind::Periodic).unwrap();
        let y = PointStream::constant(3u64);
        let c = checkpoint_indices(&x, &y, 4, 10).unwrap();
        assert_eq!(c.mu, vec![0, 2, 5, 9]);
    }

    #[test]
    fn certify() {
        let x = PointStream::periodic(&Word::from(&[2u64, 2, 3][..])).unwrap();
        assert!(certify_two_symbol(&x, Symbol(2), Symbol(3), 3).is_ok());
        assert_eq!(certify_two_symbol(&x, Symbol(2), Symbol(3), 2), Err(Error::ConstantBase { cap: 2 }));
        assert!(matches!(
            certify_two_symbol(&x, Symbol(2), Symbol(4), 10),
            Err(Error::BaseOutsideAlphabet { symbol: 3, .. })
        ));
    }

    proptest! {
        #[test]
        fn checkpoints_match_hat_scan(sx in 0u64..1000, sy in 0u64..1000, count in 1usize..30) {
            let x = PointStream::random_binary(sx, 0, Symbol(2), Symbol(3));
            let y = PointStream::random_binary(sy, 1, Symbol(2), Symbol(3));
            prop_assume!(disagreement_witness(&x, &y, 64).is_some());
            let c = checkpoint_indices(&x, &y, count, 64).unwrap();
            let hx = hat_encode(&x, Symbol(1)).prefix(4000);
            let hy = hat_encode(&y, Symbol(1)).prefix(4000);
            let nu: Vec<u64> = (0..4000u64).filter(|&n| hx[n as usize] == Symbol(1) && hy[n as usize] == Symbol(1)).take(count).collect();
            let mu: Vec<u64> = (0..4000u64).filter(|&n| hx[n as usize] != hy[n as usize]).take(count).collect();
            prop_assert_eq!(c.nu, nu);
            prop_assert_eq!(c.mu, mu);
        }
    }
}
