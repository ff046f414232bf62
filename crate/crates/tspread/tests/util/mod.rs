//! Shared helper for the exhaustive sweeps.

use tspread::BorelInstance;

/// All t-spread instances with the given ambient, optionally anchored at
/// `i_d = n`, over every spread `1 <= t <= n`.
pub fn all_instances(n: usize, anchored: bool) -> Vec<BorelInstance> {
    fn extend(n: usize, t: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        let lo = prefix.last().map(|&p| p + t).unwrap_or(1);
        for j in lo..=n {
            prefix.push(j);
            extend(n, t, prefix, out);
            prefix.pop();
        }
    }
    let mut result = Vec::new();
    for t in 1..=n {
        let mut supports = Vec::new();
        extend(n, t, &mut Vec::new(), &mut supports);
        for u in supports {
            if anchored && *u.last().unwrap() != n {
                continue;
            }
            result.push(BorelInstance::new(n, t, u).expect("enumerated instances are valid"));
        }
    }
    result
}
