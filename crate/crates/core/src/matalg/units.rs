use std::sync::Arc;

use crate::cohom::AbelianGroupTable;
use crate::error::{Error, Result};
use crate::ffield::Fq;
use crate::matalg::CentralizerAlgebra;

/// F[β̄]^× as a dense group table, elements in increasing algebra index.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    algebra: CentralizerAlgebra,
    elements: Vec<Vec<Fq>>,
    position: Vec<u32>,
    table: Arc<AbelianGroupTable>,
}

impl UnitGroup {
    pub fn new(algebra: &CentralizerAlgebra, bound: usize) -> Result<Self> {
        let elements = algebra.units(bound)?;
        let mut position = vec![u32::MAX; algebra.order() as usize];
        for (i, e) in elements.iter().enumerate() {
            position[algebra.index(e) as usize] = i as u32;
        }
        let table = AbelianGroupTable::from_fn(elements.len(), |x, y| {
            position[algebra.index(&algebra.mul(&elements[x], &elements[y])) as usize] as usize
        })?;
        let labels = elements.iter().map(|e| format_element(algebra, e)).collect();
        Ok(UnitGroup { algebra: algebra.clone(), elements, position, table: Arc::new(table.with_labels(labels)) })
    }

    pub fn algebra(&self) -> &CentralizerAlgebra {
        &self.algebra
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[Vec<Fq>] {
        &self.elements
    }
    pub fn element(&self, i: usize) -> &[Fq] {
        &self.elements[i]
    }
    pub fn table(&self) -> &Arc<AbelianGroupTable> {
        &self.table
    }

    pub fn position(&self, e: &[Fq]) -> Result<usize> {
        match self.position.get(self.algebra.index(e) as usize) {
            Some(&p) if p != u32::MAX => Ok(p as usize),
            _ => Err(Error::NotUnit),
        }
    }
}

/// Coordinates on the power basis, e.g. "[1, 0, 2]".
pub fn format_element(algebra: &CentralizerAlgebra, e: &[Fq]) -> String {
    let k = algebra.field();
    let parts: Vec<String> = e.iter().map(|&c| k.format(c)).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FiniteField;
    use crate::matalg::RegularMatrix;

    #[test]
    fn jordan_unit_group() {
        let k = FiniteField::prime(3).unwrap();
        let b = RegularMatrix::jordan(&k, &[(Fq(0), 2)]).unwrap();
        let g = UnitGroup::new(b.algebra(), 1000).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.table().exponent(), 6);
        let one = b.algebra().one();
        assert_eq!(g.table().identity(), g.position(&one).unwrap());
        assert_eq!(g.position(&b.algebra().zero()), Err(Error::NotUnit));
    }
}
