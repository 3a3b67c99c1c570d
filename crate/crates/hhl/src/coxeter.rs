//! Coxeter systems: element arithmetic via the reflection representation,
//! reduced words, length, Bruhat order, reflections and enumeration.
//!
//! Elements are fingerprinted by their exact matrix on `h*`, which is
//! faithful for the realizations built here, so equality needs no word
//! rewriting. Canonical words are ShortLex-minimal reduced words obtained
//! by stripping the smallest left descent.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::numfield::{field_for, AlgebraicReal, FieldSpec};
use crate::realization::Realization;

/// A single Coxeter matrix entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Debug)]
pub struct CoxeterMatrix {
    pub rank: usize,
    entries: Vec<Vec<Bond>>,
}

impl CoxeterMatrix {
    pub fn new(entries: Vec<Vec<Bond>>) -> Result<Self> {
        let rank = entries.len();
        if rank == 0 {
            return Err(Error::InvalidMatrix("rank must be positive".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix("matrix is not square".into()));
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    Bond::Finite(0) => {
                        return Err(Error::InvalidMatrix("entry m <= 0".into()));
                    }
                    Bond::Finite(1) if i != j => {
                        return Err(Error::InvalidMatrix(format!(
                            "m_{i}{j} = 1 off the diagonal"
                        )));
                    }
                    Bond::Finite(m) if i == j && m != 1 => {
                        return Err(Error::InvalidMatrix(format!("m_{i}{i} must be 1")));
                    }
                    Bond::Infinite if i == j => {
                        return Err(Error::InvalidMatrix(format!("m_{i}{i} must be 1")));
                    }
                    _ => {}
                }
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidMatrix("matrix is not symmetric".into()));
                }
            }
        }
        Ok(Self { rank, entries })
    }

    pub fn bond(&self, s: usize, t: usize) -> Bond {
        self.entries[s][t]
    }

    pub fn as_options(&self) -> Vec<Vec<Option<u32>>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|b| match b {
                        Bond::Finite(m) => Some(*m),
                        Bond::Infinite => None,
                    })
                    .collect()
            })
            .collect()
    }

    fn from_offdiag(rank: usize, f: impl Fn(usize, usize) -> Bond) -> Self {
        let entries = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { Bond::Finite(1) } else { f(i.min(j), i.max(j)) })
                    .collect()
            })
            .collect();
        Self { rank, entries }
    }

    pub fn rank_one() -> Self {
        Self::from_offdiag(1, |_, _| unreachable!())
    }

    /// The symmetric group S_n as the type A Coxeter system of rank n-1.
    pub fn symmetric_group(n: usize) -> Self {
        assert!(n >= 2);
        Self::from_offdiag(n - 1, |i, j| {
            if j == i + 1 {
                Bond::Finite(3)
            } else {
                Bond::Finite(2)
            }
        })
    }

    pub fn dihedral(m: u32) -> Self {
        assert!(m >= 2);
        Self::from_offdiag(2, |_, _| Bond::Finite(m))
    }

    pub fn dihedral_infinite() -> Self {
        Self::from_offdiag(2, |_, _| Bond::Infinite)
    }

    pub fn type_b(n: usize) -> Self {
        assert!(n >= 2);
        Self::from_offdiag(n, |i, j| {
            if i == 0 && j == 1 {
                Bond::Finite(4)
            } else if j == i + 1 {
                Bond::Finite(3)
            } else {
                Bond::Finite(2)
            }
        })
    }

    pub fn type_h3() -> Self {
        Self::from_offdiag(3, |i, j| {
            if i == 0 && j == 1 {
                Bond::Finite(5)
            } else if j == i + 1 {
                Bond::Finite(3)
            } else {
                Bond::Finite(2)
            }
        })
    }
}

/// Default enumeration cap, overridable through `HHL_MAX_ELEMENTS`.
pub fn element_cap() -> usize {
    std::env::var("HHL_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(200_000)
}

/// A group element: ShortLex-minimal reduced word plus the exact matrix of
/// its action on `h*` (the equality fingerprint) and its inverse.
#[derive(Clone, Debug)]
pub struct Element {
    pub word: Vec<u8>,
    pub length: u32,
    pub matrix: Mat,
    pub inv_matrix: Mat,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}
impl Eq for Element {}

impl Element {
    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Render as `s0*s2*s0` style, `e` for the identity.
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word
                .iter()
                .map(|s| format!("s{s}"))
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

pub type ElemId = u32;

#[derive(Clone, Debug)]
pub struct ElemInfo {
    pub word: Vec<u8>,
    pub length: u32,
    pub matrix: Mat,
    /// `left[s]` is the id of `s*w`, if enumerated.
    pub left: Vec<Option<ElemId>>,
    /// `right[s]` is the id of `w*s`, if enumerated.
    pub right: Vec<Option<ElemId>>,
    pub inv: ElemId,
}

/// BFS-enumerated multiplication table, ids in ShortLex order.
#[derive(Debug)]
pub struct GroupTable {
    pub elements: Vec<ElemInfo>,
    index: HashMap<Vec<AlgebraicReal>, ElemId>,
    /// True when the whole (finite) group was enumerated.
    pub complete: bool,
    pub max_length: u32,
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn id_of_matrix(&self, m: &Mat) -> Option<ElemId> {
        self.index.get(m.row_major()).copied()
    }

    pub fn length(&self, id: ElemId) -> u32 {
        self.elements[id as usize].length
    }

    pub fn word(&self, id: ElemId) -> &[u8] {
        &self.elements[id as usize].word
    }

    pub fn left(&self, id: ElemId, s: usize) -> Option<ElemId> {
        self.elements[id as usize].left[s]
    }

    pub fn right(&self, id: ElemId, s: usize) -> Option<ElemId> {
        self.elements[id as usize].right[s]
    }

    pub fn inv(&self, id: ElemId) -> ElemId {
        self.elements[id as usize].inv
    }

    /// `s` is a left descent iff `s*w` is shorter.
    pub fn is_left_descent(&self, id: ElemId, s: usize) -> bool {
        match self.left(id, s) {
            Some(j) => self.length(j) < self.length(id),
            None => false,
        }
    }

    pub fn ids_of_length(&self, l: u32) -> impl Iterator<Item = ElemId> + '_ {
        self.elements
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.length == l)
            .map(|(i, _)| i as ElemId)
    }

    /// Id of the unique maximal-length element of a complete table.
    pub fn longest(&self) -> ElemId {
        (self.len() - 1) as ElemId
    }
}

#[derive(Debug)]
pub struct CoxeterSystem {
    pub matrix: CoxeterMatrix,
    pub field: Arc<FieldSpec>,
    pub realization: Realization,
    full: OnceLock<Result<Arc<GroupTable>>>,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Result<Arc<Self>> {
        let field = field_for(&matrix.as_options())?;
        let realization = Realization::build(&matrix, &field)?;
        Ok(Arc::new(Self { matrix, field, realization, full: OnceLock::new() }))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank
    }

    pub fn identity(&self) -> Element {
        let id = Mat::identity(&self.field, self.realization.dim);
        Element { word: vec![], length: 0, matrix: id.clone(), inv_matrix: id }
    }

    fn gen_matrix(&self, s: u8) -> &Mat {
        &self.realization.dual_gens[s as usize]
    }

    /// True iff `s` is a left descent of the element with inverse matrix
    /// `inv`: `w^{-1}(alpha_s)` is a negative root.
    fn is_left_descent_matrix(&self, inv: &Mat, s: u8) -> bool {
        let alpha = self.realization.root(s as usize);
        let image = inv.matvec(&alpha);
        self.realization.is_negative_root(&image)
    }

    /// Normal form of an arbitrary word: the ShortLex-minimal reduced word,
    /// obtained by repeatedly stripping the smallest left descent.
    pub fn normalize(&self, word: &[u8]) -> Element {
        for &s in word {
            assert!((s as usize) < self.rank(), "generator index out of range");
        }
        let mut m = Mat::identity(&self.field, self.realization.dim);
        for &s in word {
            m = m.matmul(self.gen_matrix(s));
        }
        self.normalize_matrix(m)
    }

    fn normalize_matrix(&self, matrix: Mat) -> Element {
        // cur = remaining element, inv = its inverse; peel left descents.
        let mut cur = matrix.clone();
        let mut inv = cur.inverse().expect("group element matrices are invertible");
        let mut out = Vec::new();
        loop {
            let mut descent = None;
            for s in 0..self.rank() as u8 {
                if self.is_left_descent_matrix(&inv, s) {
                    descent = Some(s);
                    break;
                }
            }
            match descent {
                None => break,
                Some(s) => {
                    out.push(s);
                    cur = self.gen_matrix(s).matmul(&cur);
                    inv = inv.matmul(self.gen_matrix(s));
                }
            }
        }
        debug_assert!(cur == Mat::identity(&self.field, self.realization.dim));
        let length = out.len() as u32;
        // matrix of the element equals the product over the canonical word
        let mut m = Mat::identity(&self.field, self.realization.dim);
        let mut mi = Mat::identity(&self.field, self.realization.dim);
        for &s in &out {
            m = m.matmul(self.gen_matrix(s));
            mi = self.gen_matrix(s).matmul(&mi);
        }
        debug_assert!(m == matrix);
        Element { word: out, length, matrix: m, inv_matrix: mi }
    }

    pub fn element_from_id(&self, table: &GroupTable, id: ElemId) -> Element {
        let info = &table.elements[id as usize];
        let inv = &table.elements[info.inv as usize];
        Element {
            word: info.word.clone(),
            length: info.length,
            matrix: info.matrix.clone(),
            inv_matrix: inv.matrix.clone(),
        }
    }

    /// BFS enumeration of all elements with length below the cap (all of a
    /// finite group if `max_length` is `None` and the group closes).
    pub fn enumerate_table(
        &self,
        max_length: Option<u32>,
        cap: usize,
    ) -> Result<Arc<GroupTable>> {
        let dim = self.realization.dim;
        let identity = Mat::identity(&self.field, dim);
        let mut mats: Vec<Mat> = vec![identity.clone()];
        let mut lens: Vec<u32> = vec![0];
        let mut index: HashMap<Vec<AlgebraicReal>, u32> = HashMap::new();
        index.insert(identity.row_major().to_vec(), 0);
        let mut frontier: Vec<u32> = vec![0];
        let mut complete = false;
        let mut length = 0u32;
        loop {
            if max_length.is_some_and(|ml| length >= ml) {
                break;
            }
            let mut next = Vec::new();
            for &w in &frontier {
                for s in 0..self.rank() as u8 {
                    let m = self.gen_matrix(s).matmul(&mats[w as usize]);
                    let key = m.row_major().to_vec();
                    if !index.contains_key(&key) {
                        let id = mats.len() as u32;
                        if mats.len() >= cap {
                            return Err(Error::ElementCapExceeded { cap });
                        }
                        index.insert(key, id);
                        mats.push(m);
                        lens.push(length + 1);
                        next.push(id);
                    }
                }
            }
            if next.is_empty() {
                complete = true;
                break;
            }
            frontier = next;
            length += 1;
        }
        let max_len_seen = *lens.iter().max().unwrap();

        // left products (where the result is enumerated)
        let n = mats.len();
        let rank = self.rank();
        let mut left: Vec<Vec<Option<u32>>> = vec![vec![None; rank]; n];
        for w in 0..n {
            for s in 0..rank {
                let m = self.gen_matrix(s as u8).matmul(&mats[w]);
                left[w][s] = index.get(m.row_major()).copied();
            }
        }

        // canonical words by greedy smallest-left-descent
        let mut order: Vec<u32> = (0..n as u32).collect();
        let mut words: Vec<Option<Vec<u8>>> = vec![None; n];
        words[0] = Some(vec![]);
        order.sort_by_key(|&i| lens[i as usize]);
        for &i in &order {
            if words[i as usize].is_some() {
                continue;
            }
            let mut s_min = None;
            for s in 0..rank {
                if let Some(j) = left[i as usize][s] {
                    if lens[j as usize] < lens[i as usize] {
                        s_min = Some((s as u8, j));
                        break;
                    }
                }
            }
            let (s, j) = s_min.expect("non-identity element has a left descent");
            let mut w = vec![s];
            w.extend_from_slice(words[j as usize].as_ref().expect("processed in length order"));
            words[i as usize] = Some(w);
        }
        let words: Vec<Vec<u8>> = words.into_iter().map(|w| w.unwrap()).collect();

        // ShortLex order and remapping
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.sort_by(|&a, &b| {
            (lens[a as usize], &words[a as usize]).cmp(&(lens[b as usize], &words[b as usize]))
        });
        let mut new_id = vec![0u32; n];
        for (fresh, &old) in perm.iter().enumerate() {
            new_id[old as usize] = fresh as u32;
        }

        let mut elements: Vec<ElemInfo> = perm
            .iter()
            .map(|&old| ElemInfo {
                word: words[old as usize].clone(),
                length: lens[old as usize],
                matrix: mats[old as usize].clone(),
                left: left[old as usize]
                    .iter()
                    .map(|o| o.map(|j| new_id[j as usize]))
                    .collect(),
                right: vec![None; rank],
                inv: 0,
            })
            .collect();
        let mut new_index = HashMap::new();
        for (id, e) in elements.iter().enumerate() {
            new_index.insert(e.matrix.row_major().to_vec(), id as u32);
        }
        for id in 0..n {
            for s in 0..rank {
                let m = elements[id].matrix.matmul(self.gen_matrix(s as u8));
                elements[id].right[s] = new_index.get(m.row_major()).copied();
            }
        }
        // inverses: w = s w'  =>  w^{-1} = w'^{-1} s
        for id in 0..n {
            if elements[id].length == 0 {
                continue;
            }
            let s = elements[id].word[0] as usize;
            let wp = elements[id].left[s].expect("descent product enumerated");
            let wp_inv = elements[wp as usize].inv;
            let inv = elements[wp_inv as usize].right[s].expect("inverse stays in range");
            elements[id].inv = inv;
        }

        Ok(Arc::new(GroupTable {
            elements,
            index: new_index,
            complete,
            max_length: max_len_seen,
        }))
    }

    /// The full multiplication table of a finite group (cached).
    pub fn full_table(&self) -> Result<Arc<GroupTable>> {
        self.full
            .get_or_init(|| {
                let cap = element_cap();
                self.enumerate_table(None, cap)
                    .map_err(|e| match e {
                        Error::ElementCapExceeded { cap } => Error::InfiniteGroup { cap },
                        other => other,
                    })
            })
            .clone()
    }

    /// All elements of length at most `max_length`, ShortLex-ordered.
    pub fn enumerate(&self, max_length: u32) -> Result<Vec<Element>> {
        let table = self.enumerate_table(Some(max_length), element_cap())?;
        Ok((0..table.len() as u32)
            .map(|id| self.element_from_id(&table, id))
            .collect())
    }

    /// Bruhat order by the subword property: scan a fixed reduced word of
    /// `x` once, maintaining `u`, and left-multiply whenever that shortens.
    pub fn bruhat_leq(&self, y: &Element, x: &Element) -> bool {
        if y.length > x.length {
            return false;
        }
        let mut u = y.matrix.clone();
        let mut u_inv = y.inv_matrix.clone();
        let mut u_len = y.length;
        for &s in &x.word {
            if u_len == 0 {
                return true;
            }
            if self.is_left_descent_matrix(&u_inv, s) {
                u = self.gen_matrix(s).matmul(&u);
                u_inv = u_inv.matmul(self.gen_matrix(s));
                u_len -= 1;
            }
        }
        u_len == 0 && u == Mat::identity(&self.field, self.realization.dim)
    }

    /// All reflections of length at most `max_length`, with a witness
    /// `(w, s)` such that the reflection equals `w s w^{-1}`.
    pub fn reflections(&self, max_length: u32) -> Result<Vec<(Element, Element, u8)>> {
        let table = self.enumerate_table(Some(max_length), element_cap())?;
        let mut seen: HashMap<Vec<AlgebraicReal>, (ElemId, u32, u8)> = HashMap::new();
        for w in 0..table.len() as u32 {
            for s in 0..self.rank() as u8 {
                let m_w = &table.elements[w as usize].matrix;
                let m_winv = &table.elements[table.inv(w) as usize].matrix;
                let t = m_w.matmul(self.gen_matrix(s)).matmul(m_winv);
                let key = t.row_major().to_vec();
                if let Some(&tid) = table.index.get(&key) {
                    seen.entry(key).or_insert((tid, w, s));
                }
            }
        }
        let mut found: Vec<(ElemId, u32, u8)> = seen.into_values().collect();
        found.sort_by_key(|&(tid, w, s)| (tid, w, s));
        found.dedup_by_key(|&mut (tid, _, _)| tid);
        Ok(found
            .into_iter()
            .map(|(tid, w, s)| {
                let t = self.element_from_id(&table, tid);
                debug_assert!(t.matrix.matmul(&t.matrix) == Mat::identity(&self.field, self.realization.dim));
                (t, self.element_from_id(&table, w), s)
            })
            .collect())
    }

    /// The unique maximal-length element of a finite group.
    pub fn longest_element(&self) -> Result<Element> {
        let table = self.full_table()?;
        let max_len = table.max_length;
        let top: Vec<ElemId> = table.ids_of_length(max_len).collect();
        assert_eq!(top.len(), 1, "longest element is unique in a finite group");
        Ok(self.element_from_id(&table, top[0]))
    }

    /// All reduced expressions of `x`, lexicographically ordered.
    pub fn reduced_expressions(&self, x: &Element) -> Vec<Vec<u8>> {
        if x.length == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for s in 0..self.rank() as u8 {
            if self.is_left_descent_matrix(&x.inv_matrix, s) {
                let shorter = Element {
                    word: vec![],
                    length: x.length - 1,
                    matrix: self.gen_matrix(s).matmul(&x.matrix),
                    inv_matrix: x.inv_matrix.matmul(self.gen_matrix(s)),
                };
                for mut w in self.reduced_expressions(&shorter) {
                    w.insert(0, s);
                    out.push(w);
                }
            }
        }
        out
    }

    /// Product of two elements.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.normalize_matrix(a.matrix.matmul(&b.matrix))
    }

    pub fn generator(&self, s: u8) -> Element {
        self.normalize(&[s])
    }
}
