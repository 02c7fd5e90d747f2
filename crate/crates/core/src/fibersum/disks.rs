use serde::Serialize;

/// Height interval `[center − radius, center + radius]` of a removed disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskPlacement {
    pub center_height: f64,
    pub height_radius: f64,
}

impl DiskPlacement {
    pub fn lower(&self) -> f64 {
        self.center_height - self.height_radius
    }

    pub fn upper(&self) -> f64 {
        self.center_height + self.height_radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisjointnessCertificate {
    /// Smallest gap between consecutive intervals, `+∞` for fewer than two.
    pub min_gap: f64,
    /// Largest `|height|` reached by any interval, 0 for none.
    pub max_extent: f64,
    pub disjoint: bool,
    pub avoids_poles: bool,
}

/// Boundary identification between blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Gluing {
    /// Orientation-reversing reflection on the base, its double on the total space.
    Reflection,
}

/// A vertex block: the suspension with `k` fiber-disk neighbourhoods removed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockSpec {
    pub valence: usize,
    pub disks: Vec<DiskPlacement>,
    pub certificate: DisjointnessCertificate,
    pub gluing: Gluing,
}

/// `k` disks centred at `−0.8 + 1.6(i + ½)/k` with height radius `0.6/k`.
pub fn plan_disks(k: usize) -> BlockSpec {
    let disks: Vec<DiskPlacement> = (0..k)
        .map(|i| DiskPlacement {
            center_height: -0.8 + 1.6 * (i as f64 + 0.5) / k as f64,
            height_radius: 0.6 / k as f64,
        })
        .collect();
    let min_gap = disks
        .windows(2)
        .map(|w| w[1].lower() - w[0].upper())
        .fold(f64::INFINITY, f64::min);
    let max_extent = disks
        .iter()
        .map(|d| d.lower().abs().max(d.upper().abs()))
        .fold(0.0, f64::max);
    BlockSpec {
        valence: k,
        certificate: DisjointnessCertificate {
            min_gap,
            max_extent,
            disjoint: min_gap > 0.0,
            avoids_poles: max_extent < 1.0,
        },
        disks,
        gluing: Gluing::Reflection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(plan_disks(0).disks.is_empty());
        let one = plan_disks(1);
        assert_eq!(one.disks[0].center_height, 0.0);
        assert_eq!(one.disks[0].height_radius, 0.6);
        let four = plan_disks(4);
        assert_eq!(four.disks.len(), 4);
        assert!(four.certificate.disjoint && four.certificate.avoids_poles);
        assert!(four.certificate.max_extent < 0.8);
    }

    #[test]
    fn certificate_holds_up_to_a_thousand() {
        for k in 0..=1000 {
            let b = plan_disks(k);
            assert!(b.certificate.disjoint && b.certificate.avoids_poles, "k={k}");
            for w in b.disks.windows(2) {
                assert!(w[0].upper() < w[1].lower());
            }
        }
    }
}
