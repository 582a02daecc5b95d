use crate::error::{Error, Result};

/// Number of id pairs whose relative order differs between `p1` and `p2`.
pub fn discordant_pairs(p1: &[u32], p2: &[u32]) -> Result<u64> {
    if p1.len() != p2.len() {
        return Err(Error::invalid(format!(
            "permutations differ in length ({} vs {})",
            p1.len(),
            p2.len()
        )));
    }
    let max_id = p1.iter().chain(p2).copied().max().unwrap_or(0) as usize;
    let mut rank = vec![usize::MAX; max_id + 1];
    for (pos, &id) in p1.iter().enumerate() {
        if rank[id as usize] != usize::MAX {
            return Err(Error::invalid(format!("id {id} repeated in first permutation")));
        }
        rank[id as usize] = pos;
    }
    let mut mapped = Vec::with_capacity(p2.len());
    let mut seen = vec![false; max_id + 1];
    for &id in p2 {
        let r = rank[id as usize];
        if r == usize::MAX || seen[id as usize] {
            return Err(Error::invalid("permutations are over different id sets"));
        }
        seen[id as usize] = true;
        mapped.push(r);
    }
    let mut buf = vec![0; mapped.len()];
    Ok(count_inversions(&mut mapped, &mut buf))
}

fn count_inversions(xs: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (l, r) = xs.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        count_inversions(l, bl) + count_inversions(r, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if xs[i] <= xs[j] {
            buf[k] = xs[i];
            i += 1;
        } else {
            buf[k] = xs[j];
            inv += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&xs[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&xs[j..n]);
    xs.copy_from_slice(&buf[..n]);
    inv
}

/// Share of id pairs ordered differently in the two sequences, in `[0, 1]`.
pub fn jpr_distance(p1: &[u32], p2: &[u32]) -> Result<f64> {
    let n = p1.len();
    if n < 2 {
        return Err(Error::invalid(format!("distance needs at least 2 elements, got {n}")));
    }
    let d = discordant_pairs(p1, p2)?;
    Ok(d as f64 / (n * (n - 1) / 2) as f64)
}
