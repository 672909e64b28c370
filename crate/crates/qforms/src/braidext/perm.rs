//! Symmetric-group utilities: lengths, canonical reduced words, and the
//! shuffle sets 𝒞_{ki} used by the antisymmetrizer factorizations.

use crate::error::QError;

/// Full enumeration of 𝒮_k is only ever used by test oracles; the
/// antisymmetrizer recursion never enumerates.
pub const PERM_ENUM_LIMIT: usize = 8;

/// A permutation of {0, …, k−1} in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm { img: (0..k).collect() }
    }

    pub fn from_images(img: Vec<usize>) -> Result<Self, QError> {
        let k = img.len();
        let mut seen = vec![false; k];
        for &v in &img {
            if v >= k || seen[v] {
                return Err(QError::InvalidParams("not a permutation".into()));
            }
            seen[v] = true;
        }
        Ok(Perm { img })
    }

    pub fn k(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    /// ℓ(w): the number of inversions.
    pub fn length(&self) -> usize {
        let mut inv = 0;
        for i in 0..self.img.len() {
            for j in i + 1..self.img.len() {
                if self.img[i] > self.img[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// A canonical reduced word: letters j (1-based, s_j swapping slots
    /// j, j+1) such that w = s_{w₁}s_{w₂}⋯s_{wℓ}, with ℓ = length().
    /// Repeatedly right-multiplying by the first descent sorts the one-line
    /// form and removes exactly one inversion per step.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut v = self.img.clone();
        let mut swaps = Vec::new();
        loop {
            let Some(j) = (1..v.len()).find(|&j| v[j - 1] > v[j]) else {
                break;
            };
            swaps.push(j);
            v.swap(j - 1, j);
        }
        // w · s_{a₁}⋯s_{aℓ} = id, hence w = s_{aℓ}⋯s_{a₁}.
        swaps.reverse();
        swaps
    }

    /// Function composition: (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.k(), other.k());
        Perm { img: other.img.iter().map(|&i| self.img[i]).collect() }
    }

    /// The nearest-neighbor transposition s_j (1-based).
    pub fn transposition(k: usize, j: usize) -> Perm {
        assert!(j >= 1 && j < k);
        let mut p = Perm::identity(k);
        p.img.swap(j - 1, j);
        p
    }
}

/// All of 𝒮_k in lexicographic order of one-line notation.
pub fn all_perms(k: usize) -> Result<Vec<Perm>, QError> {
    if k > PERM_ENUM_LIMIT {
        return Err(QError::ResourceLimit(format!(
            "refusing to enumerate S_{k}; the recursion path never needs it"
        )));
    }
    let mut out = Vec::new();
    let mut img = (0..k).collect::<Vec<_>>();
    loop {
        out.push(Perm { img: img.clone() });
        // next_permutation in place
        let Some(i) = (1..k).rev().find(|&i| img[i - 1] < img[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| img[j] > img[i - 1]).unwrap();
        img.swap(i - 1, j);
        img[i..].reverse();
        if k == 0 {
            break;
        }
    }
    Ok(out)
}

/// The shuffle set 𝒞_{ki}: permutations increasing on the first i and the
/// last k−i slots; the minimal-length representatives of 𝒮_k/(𝒮_i×𝒮_{k−i}).
pub fn shuffles(k: usize, i: usize) -> Result<Vec<Perm>, QError> {
    assert!(i <= k);
    Ok(all_perms(k)?
        .into_iter()
        .filter(|p| {
            p.img[..i].windows(2).all(|w| w[0] < w[1])
                && p.img[i..].windows(2).all(|w| w[0] < w[1])
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_and_reduced_words() {
        for k in 1..=4 {
            let perms = all_perms(k).unwrap();
            assert_eq!(perms.len(), (1..=k).product::<usize>());
            for p in &perms {
                let word = p.reduced_word();
                assert_eq!(word.len(), p.length());
                let mut acc = Perm::identity(k);
                for &j in &word {
                    acc = acc.compose(&Perm::transposition(k, j));
                }
                assert_eq!(&acc, p);
            }
            // The longest element has k(k-1)/2 inversions.
            let max = perms.iter().map(Perm::length).max().unwrap();
            assert_eq!(max, k * (k - 1) / 2);
        }
    }

    #[test]
    fn shuffle_sets() {
        let c21 = shuffles(2, 1).unwrap();
        assert_eq!(c21.len(), 2);
        let lens: Vec<usize> = c21.iter().map(Perm::length).collect();
        assert_eq!(lens, vec![0, 1]);
        assert_eq!(shuffles(3, 1).unwrap().len(), 3);
        assert_eq!(shuffles(4, 2).unwrap().len(), 6);
    }

    #[test]
    fn enumeration_limit() {
        assert!(matches!(all_perms(9), Err(QError::ResourceLimit(_))));
    }
}
