use super::ElementTable;

/// Conjugacy classes of an enumerated group, each sorted, ordered by their
/// smallest element. Computed as orbits of conjugation by the generators.
pub fn conjugacy_classes(table: &ElementTable) -> Vec<Vec<u32>> {
    let ids = class_ids(table, table.generator_indices());
    let count = ids.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut classes = vec![Vec::new(); count];
    for (i, &c) in ids.iter().enumerate() {
        classes[c as usize].push(i as u32);
    }
    classes
}

/// Class id per element under conjugation by the subgroup generated by
/// `conjugators` (indices into `table`). Ids number the classes in order of
/// their smallest element.
pub fn class_ids(table: &ElementTable, conjugators: &[u32]) -> Vec<u32> {
    let n = table.len();
    let mut ids = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut queue = Vec::new();
    for start in 0..n {
        if ids[start] != u32::MAX {
            continue;
        }
        ids[start] = next;
        queue.clear();
        queue.push(start);
        while let Some(x) = queue.pop() {
            for &s in conjugators {
                let y = table.conjugate(x, s as usize);
                if ids[y] == u32::MAX {
                    ids[y] = next;
                    queue.push(y);
                }
            }
        }
        next += 1;
    }
    ids
}

pub fn is_conjugate(table: &ElementTable, i: usize, j: usize) -> bool {
    let ids = class_ids(table, table.generator_indices());
    ids[i] == ids[j]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permeng::{PermGroup, Permutation};

    #[test]
    fn class_equation_of_psl25() {
        let t = Permutation::from_images(vec![1, 2, 3, 4, 0, 5]).unwrap();
        let s = Permutation::from_images(vec![0, 4, 3, 2, 1, 5]).unwrap();
        let w = Permutation::from_images(vec![5, 4, 2, 3, 1, 0]).unwrap();
        let table = ElementTable::new(&PermGroup::new(6, vec![t.clone(), s, w]).unwrap()).unwrap();
        let classes = conjugacy_classes(&table);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        assert_eq!(classes[0], vec![0]);
        assert_eq!(sizes.iter().sum::<usize>(), 60);
        let ti = table.index_of(&t).unwrap();
        let t2 = table.index_of(&t.pow(2)).unwrap();
        let t4 = table.index_of(&t.pow(4)).unwrap();
        // x+1 and x+4 = x-1 are conjugate (4 is a square), x+2 is not
        assert!(is_conjugate(&table, ti, t4));
        assert!(!is_conjugate(&table, ti, t2));
    }
}
