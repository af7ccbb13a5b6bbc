use super::{ElementId, RingTable};

fn additive_order(r: &RingTable, x: ElementId) -> usize {
    let mut acc = x;
    let mut k = 1;
    while acc != r.zero() {
        acc = r.add(acc, x);
        k += 1;
    }
    k
}

/// Greedy additive generating set.
fn additive_generators(r: &RingTable) -> Vec<ElementId> {
    let mut span = vec![false; r.order()];
    span[r.zero().index()] = true;
    let mut gens = Vec::new();
    // prefer elements of large additive order so fewer generators are needed
    let mut candidates: Vec<ElementId> = r.elements().collect();
    candidates.sort_by_key(|&x| std::cmp::Reverse(additive_order(r, x)));
    for x in candidates {
        if span[x.index()] {
            continue;
        }
        gens.push(x);
        let mut frontier: Vec<ElementId> = (0..r.order())
            .filter(|&i| span[i])
            .map(|i| ElementId(i as u32))
            .collect();
        while let Some(y) = frontier.pop() {
            for &g in &gens {
                let z = r.add(y, g);
                if !span[z.index()] {
                    span[z.index()] = true;
                    frontier.push(z);
                }
            }
        }
    }
    gens
}

/// Search for a ring isomorphism `a → b`, returned as the image of each
/// element of `a`. Backtracks over images of an additive generating set, so
/// it is only meant for small rings.
pub fn find_isomorphism(a: &RingTable, b: &RingTable) -> Option<Vec<ElementId>> {
    if a.order() != b.order() {
        return None;
    }
    let gens = additive_generators(a);
    let mut map: Vec<Option<ElementId>> = vec![None; a.order()];
    map[a.zero().index()] = Some(b.zero());
    extend(a, b, &gens, 0, map)
}

fn extend(
    a: &RingTable,
    b: &RingTable,
    gens: &[ElementId],
    depth: usize,
    map: Vec<Option<ElementId>>,
) -> Option<Vec<ElementId>> {
    if depth == gens.len() {
        let full: Vec<ElementId> = map.into_iter().collect::<Option<_>>()?;
        return is_isomorphism(a, b, &full).then_some(full);
    }
    let g = gens[depth];
    let order = additive_order(a, g);
    for candidate in b.elements() {
        if additive_order(b, candidate) != order {
            continue;
        }
        if let Some(next) = close_under_generator(a, b, &map, g, candidate) {
            if let Some(found) = extend(a, b, gens, depth + 1, next) {
                return Some(found);
            }
        }
    }
    None
}

/// Extend an additive partial map by `g ↦ image`; `None` on conflict.
fn close_under_generator(
    a: &RingTable,
    b: &RingTable,
    map: &[Option<ElementId>],
    g: ElementId,
    image: ElementId,
) -> Option<Vec<Option<ElementId>>> {
    let mut next = map.to_vec();
    let mut frontier: Vec<ElementId> = (0..a.order())
        .filter(|&i| next[i].is_some())
        .map(|i| ElementId(i as u32))
        .collect();
    while let Some(x) = frontier.pop() {
        let fx = next[x.index()].expect("frontier elements are mapped");
        let y = a.add(x, g);
        let fy = b.add(fx, image);
        match next[y.index()] {
            Some(existing) if existing != fy => return None,
            Some(_) => {}
            None => {
                next[y.index()] = Some(fy);
                frontier.push(y);
            }
        }
    }
    Some(next)
}

fn is_isomorphism(a: &RingTable, b: &RingTable, f: &[ElementId]) -> bool {
    let mut hit = vec![false; b.order()];
    for &y in f {
        if std::mem::replace(&mut hit[y.index()], true) {
            return false;
        }
    }
    if f[a.one().index()] != b.one() {
        return false;
    }
    a.elements().all(|x| {
        a.elements().all(|y| {
            f[a.add(x, y).index()] == b.add(f[x.index()], f[y.index()])
                && f[a.mul(x, y).index()] == b.mul(f[x.index()], f[y.index()])
        })
    })
}
