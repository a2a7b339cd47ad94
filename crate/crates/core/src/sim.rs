//! Executable caching scheme derived from a PDA: placement, XOR delivery and
//! per-user decoding, plus demand sweeps that check every user recovers its
//! file.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pda::{Pda, PlacementSet};
use crate::ratio::Rate;

/// Default bound on `N^K` for exhaustive verification.
pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 1_000_000;

/// Default payload size of one packet in bytes.
pub const DEFAULT_PACKET_BYTES: usize = 64;

/// Packet `packet` of file `file`, written `W(file,packet)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PacketId {
    pub file: usize,
    pub packet: usize,
}

impl PacketId {
    pub fn new(file: usize, packet: usize) -> Self {
        Self { file, packet }
    }
}

impl fmt::Display for PacketId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({},{})", self.file, self.packet)
    }
}

/// File contents: `N` files of `F` packets, each `packet_bytes` long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Library {
    files: usize,
    packets: usize,
    packet_bytes: usize,
    data: Vec<u8>,
}

impl Library {
    /// Deterministic pseudo-random contents.
    pub fn random(files: usize, packets: usize, packet_bytes: usize, seed: u64) -> Self {
        let mut data = vec![0u8; files * packets * packet_bytes];
        ChaCha8Rng::seed_from_u64(seed).fill_bytes(&mut data);
        Self {
            files,
            packets,
            packet_bytes,
            data,
        }
    }

    pub fn packet_bytes(&self) -> usize {
        self.packet_bytes
    }

    pub fn packet(&self, id: PacketId) -> &[u8] {
        let start = (id.file * self.packets + id.packet) * self.packet_bytes;
        &self.data[start..start + self.packet_bytes]
    }

    /// The whole file `file`, packets concatenated.
    pub fn file(&self, file: usize) -> &[u8] {
        let len = self.packets * self.packet_bytes;
        &self.data[file * len..(file + 1) * len]
    }
}

fn xor_into(acc: &mut [u8], other: &[u8]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a ^= b;
    }
}

/// A `(K, M, N)` system bound to a validated PDA.
#[derive(Debug, Clone)]
pub struct CachingInstance {
    pda: Pda,
    files: usize,
    placement: Vec<PlacementSet>,
    /// Positions `(row, col)` of each slot's integer.
    slots: Vec<Vec<(usize, usize)>>,
    library: Option<Library>,
}

impl CachingInstance {
    /// Places packets: user `k` caches packet `j` of every file whenever the
    /// PDA has a star at `(j, k)`.
    pub fn place(pda: Pda, files: usize) -> Result<Self> {
        let report = pda.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidPda(format!(
                "{} violation(s), first: {v}",
                report.violations.len()
            )));
        }
        if files < pda.users() {
            return Err(Error::NTooSmall {
                n: files,
                k: pda.users(),
            });
        }
        let placement = pda.placement_sets();
        let mut slots = vec![Vec::new(); pda.symbol_count()];
        for (s, mut cells) in pda.occurrences() {
            cells.sort_by_key(|&(_, k)| k);
            slots[s as usize] = cells;
        }
        Ok(Self {
            pda,
            files,
            placement,
            slots,
            library: None,
        })
    }

    /// Binds concrete file contents so transmissions carry payload bytes.
    pub fn with_library(mut self, library: Library) -> Result<Self> {
        if library.files != self.files || library.packets != self.pda.packets() {
            return Err(Error::ParameterOutOfRange(format!(
                "library is {}x{} packets, instance needs {}x{}",
                library.files,
                library.packets,
                self.files,
                self.pda.packets()
            )));
        }
        self.library = Some(library);
        Ok(self)
    }

    /// Binds seeded random contents.
    pub fn with_random_payloads(self, packet_bytes: usize, seed: u64) -> Self {
        let lib = Library::random(self.files, self.pda.packets(), packet_bytes, seed);
        self.with_library(lib).expect("dimensions match")
    }

    pub fn pda(&self) -> &Pda {
        &self.pda
    }

    pub fn files(&self) -> usize {
        self.files
    }

    pub fn users(&self) -> usize {
        self.pda.users()
    }

    pub fn library(&self) -> Option<&Library> {
        self.library.as_ref()
    }

    /// Cache size `M = N*Z/F` in file units.
    pub fn memory(&self) -> Ratio<u64> {
        Ratio::new(
            (self.files * self.pda.stars_per_column()) as u64,
            self.pda.packets() as u64,
        )
    }

    /// Cached fraction of the library, `Z/F`.
    pub fn cache_fraction(&self) -> Ratio<u64> {
        Ratio::new(
            self.pda.stars_per_column() as u64,
            self.pda.packets() as u64,
        )
    }

    pub fn placement(&self, user: usize) -> &PlacementSet {
        &self.placement[user]
    }

    pub fn holds(&self, user: usize, id: PacketId) -> bool {
        id.file < self.files && self.placement[user].contains(id.packet)
    }

    /// Every packet id in user `user`'s cache.
    pub fn cache(&self, user: usize) -> Vec<PacketId> {
        let rows = &self.placement[user].rows;
        (0..self.files)
            .flat_map(|i| rows.iter().map(move |&j| PacketId::new(i, j)))
            .collect()
    }

    fn check_demand(&self, demand: &DemandVector) -> Result<()> {
        if demand.0.len() != self.users() {
            return Err(Error::BadDemand(format!(
                "expected {} entries, got {}",
                self.users(),
                demand.0.len()
            )));
        }
        if let Some((k, &d)) = demand.0.iter().enumerate().find(|(_, &d)| d >= self.files) {
            return Err(Error::BadDemand(format!(
                "user {k} requests file {d}, only {} files",
                self.files
            )));
        }
        Ok(())
    }

    /// The `S` broadcast signals for `demand`. Slot `s` XORs `W(d_k, j)` over
    /// every cell `(j, k)` holding `s`.
    pub fn deliver(&self, demand: &DemandVector) -> Result<Vec<Transmission>> {
        self.check_demand(demand)?;
        Ok(self
            .slots
            .iter()
            .enumerate()
            .map(|(slot, cells)| {
                let summands: Vec<PacketId> = cells
                    .iter()
                    .map(|&(j, k)| PacketId::new(demand.0[k], j))
                    .collect();
                let recipients = cells.iter().map(|&(_, k)| k).collect();
                let payload = self.library.as_ref().map(|lib| {
                    let mut acc = vec![0u8; lib.packet_bytes()];
                    for id in &summands {
                        xor_into(&mut acc, lib.packet(*id));
                    }
                    acc
                });
                Transmission {
                    slot,
                    summands,
                    recipients,
                    payload,
                }
            })
            .collect())
    }

    /// Recovers the packets user `user` is missing from `schedule`, cancelling
    /// every other summand with its cache.
    pub fn decode(
        &self,
        demand: &DemandVector,
        schedule: &[Transmission],
        user: usize,
    ) -> Result<UserDecode> {
        self.check_demand(demand)?;
        if user >= self.users() {
            return Err(Error::IndexOutOfRange {
                index: user,
                limit: self.users(),
            });
        }
        let mut recovered = Vec::new();
        for tx in schedule {
            for (idx, _) in tx.recipients.iter().enumerate().filter(|(_, &k)| k == user) {
                let target = tx.summands[idx];
                let mut bytes = tx.payload.clone();
                for (other, id) in tx.summands.iter().enumerate() {
                    if other == idx {
                        continue;
                    }
                    if !self.holds(user, *id) {
                        return Err(Error::MissingSideInfo {
                            user,
                            slot: tx.slot,
                            file: id.file,
                            packet: id.packet,
                        });
                    }
                    if let (Some(acc), Some(lib)) = (bytes.as_mut(), self.library.as_ref()) {
                        xor_into(acc, lib.packet(*id));
                    }
                }
                recovered.push(Recovered {
                    slot: tx.slot,
                    packet: target,
                    bytes,
                });
            }
        }
        Ok(UserDecode { user, recovered })
    }

    /// Delivers and decodes for every user, checking each ends up with its
    /// whole requested file (and, with payloads, the exact bytes).
    pub fn run_demand(&self, demand: &DemandVector) -> Result<DecodeReport> {
        let schedule = self.deliver(demand)?;
        let users = (0..self.users())
            .map(|k| self.decode(demand, &schedule, k))
            .collect::<Result<Vec<_>>>()?;
        let complete = users.iter().all(|u| self.user_complete(demand, u));
        Ok(DecodeReport {
            slots: schedule.len(),
            users,
            complete,
        })
    }

    fn user_complete(&self, demand: &DemandVector, decoded: &UserDecode) -> bool {
        let want = demand.0[decoded.user];
        let mut have = vec![false; self.pda.packets()];
        for &j in &self.placement[decoded.user].rows {
            have[j] = true;
        }
        for r in &decoded.recovered {
            if r.packet.file != want {
                return false;
            }
            if let (Some(bytes), Some(lib)) = (&r.bytes, &self.library) {
                if bytes.as_slice() != lib.packet(r.packet) {
                    return false;
                }
            }
            have[r.packet.packet] = true;
        }
        have.into_iter().all(|h| h)
    }

    /// Runs every demand (or a seeded sample) and aggregates the outcome.
    pub fn verify_demands(&self, mode: VerifyMode, detail: Detail) -> Result<VerifySummary> {
        let (files, users) = (self.files as u64, self.users() as u32);
        let demands: Vec<DemandVector> = match mode {
            VerifyMode::Exhaustive { cap } => {
                let total = (files as u128).checked_pow(users).unwrap_or(u128::MAX);
                if total > cap as u128 {
                    return Err(Error::CapExceeded { needed: total, cap });
                }
                (0..total as u64)
                    .map(|x| DemandVector::from_index(x, self.files, self.users()))
                    .collect()
            }
            VerifyMode::Sample { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| {
                        DemandVector(
                            (0..self.users())
                                .map(|_| rng.gen_range(0..self.files))
                                .collect(),
                        )
                    })
                    .collect()
            }
        };

        let outcomes: Vec<DemandOutcome> = demands
            .into_par_iter()
            .map(|demand| match self.run_demand(&demand) {
                Ok(report) => DemandOutcome {
                    ok: report.complete,
                    slots: report.slots,
                    error: (!report.complete).then(|| "incomplete recovery".to_string()),
                    demand,
                },
                Err(e) => DemandOutcome {
                    ok: false,
                    slots: 0,
                    error: Some(e.to_string()),
                    demand,
                },
            })
            .collect();

        let demands = outcomes.len() as u64;
        let ok = outcomes.iter().filter(|o| o.ok).count() as u64;
        let max_slots = outcomes.iter().map(|o| o.slots).max().unwrap_or(0);
        let kept = match detail {
            Detail::Summary => outcomes.into_iter().filter(|o| !o.ok).collect(),
            Detail::PerDemand => outcomes,
        };
        Ok(VerifySummary {
            demands,
            ok,
            max_slots,
            packets: self.pda.packets(),
            outcomes: kept,
        })
    }
}

/// Requested file per user.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DemandVector(pub Vec<usize>);

impl DemandVector {
    pub fn new(files: Vec<usize>) -> Self {
        Self(files)
    }

    /// The `index`-th demand in lexicographic order over `[0, N)^K`.
    pub fn from_index(mut index: u64, files: usize, users: usize) -> Self {
        let mut d = vec![0; users];
        for slot in d.iter_mut().rev() {
            *slot = (index % files as u64) as usize;
            index /= files as u64;
        }
        Self(d)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for DemandVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One broadcast slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmission {
    pub slot: usize,
    /// Packets XOR-ed together; `summands[i]` is meant for `recipients[i]`.
    pub summands: Vec<PacketId>,
    pub recipients: Vec<usize>,
    /// XOR of the summands' bytes, when contents are bound.
    pub payload: Option<Vec<u8>>,
}

impl Transmission {
    pub fn summand_set(&self) -> BTreeSet<PacketId> {
        self.summands.iter().copied().collect()
    }
}

impl fmt::Display for Transmission {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(PacketId::to_string).collect();
        write!(f, "slot {}: {}", self.slot, parts.join(" xor "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovered {
    pub slot: usize,
    pub packet: PacketId,
    pub bytes: Option<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserDecode {
    pub user: usize,
    pub recovered: Vec<Recovered>,
}

impl UserDecode {
    pub fn packets(&self) -> BTreeSet<PacketId> {
        self.recovered.iter().map(|r| r.packet).collect()
    }
}

/// Outcome of one demand: per-user recoveries and whether all users
/// completed their files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    pub slots: usize,
    pub users: Vec<UserDecode>,
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive { cap: u64 },
    Sample { count: u64, seed: u64 },
}

impl VerifyMode {
    pub fn exhaustive() -> Self {
        VerifyMode::Exhaustive {
            cap: DEFAULT_EXHAUSTIVE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detail {
    /// Keep only failing demands.
    Summary,
    /// Keep an outcome for every demand.
    PerDemand,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandOutcome {
    pub demand: DemandVector,
    pub ok: bool,
    pub slots: usize,
    pub error: Option<String>,
}

impl fmt::Display for DemandOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "demand={} {} slots={}",
            self.demand,
            if self.ok { "ok" } else { "fail" },
            self.slots
        )?;
        if let Some(e) = &self.error {
            write!(f, " error={e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub demands: u64,
    pub ok: u64,
    /// Largest slot count over all demands.
    pub max_slots: usize,
    pub packets: usize,
    pub outcomes: Vec<DemandOutcome>,
}

impl VerifySummary {
    pub fn all_ok(&self) -> bool {
        self.ok == self.demands
    }

    /// Worst observed `S_d / F`.
    pub fn rate(&self) -> Rate {
        Ratio::new(self.max_slots as u64, self.packets as u64)
    }

    /// `demands=<n> ok=<n> rate=<S>/<F>`, with `S/F` unreduced.
    pub fn summary_line(&self) -> String {
        format!(
            "demands={} ok={} rate={}/{}",
            self.demands, self.ok, self.max_slots, self.packets
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::{grid, Cell, A22};

    fn a22() -> CachingInstance {
        CachingInstance::place(Pda::from_rows(grid(A22)).unwrap(), 6).unwrap()
    }

    #[test]
    fn placement_follows_stars() {
        let inst = a22();
        let rows: Vec<Vec<usize>> = (0..6).map(|k| inst.placement(k).rows.clone()).collect();
        assert_eq!(rows, [[0, 2], [1, 3], [0, 1], [2, 3], [0, 3], [1, 2]]);
        assert_eq!(inst.memory(), Ratio::new(3, 1));
        assert_eq!(inst.cache_fraction(), Ratio::new(1, 2));
        assert_eq!(inst.cache(1).len(), 12);
        assert!(inst.holds(1, PacketId::new(5, 3)));
        assert!(!inst.holds(1, PacketId::new(5, 0)));
    }

    #[test]
    fn rejects_invalid_arrays_and_small_libraries() {
        let bad = Pda::from_rows(grid(A22))
            .unwrap()
            .with_cell(0, 1, Cell::Star);
        assert!(matches!(
            CachingInstance::place(bad, 6),
            Err(Error::InvalidPda(_))
        ));
        assert_eq!(
            CachingInstance::place(Pda::from_rows(grid(A22)).unwrap(), 5).unwrap_err(),
            Error::NTooSmall { n: 5, k: 6 }
        );
    }

    #[test]
    fn demand_checks() {
        let inst = a22();
        assert!(matches!(
            inst.deliver(&DemandVector(vec![0; 5])),
            Err(Error::BadDemand(_))
        ));
        assert!(matches!(
            inst.deliver(&DemandVector(vec![0, 0, 0, 0, 0, 6])),
            Err(Error::BadDemand(_))
        ));
    }

    #[test]
    fn payloads_decode_byte_exact() {
        let inst = a22().with_random_payloads(16, 7);
        let demand = DemandVector(vec![3, 3, 0, 5, 1, 3]);
        let report = inst.run_demand(&demand).unwrap();
        assert!(report.complete);
        assert_eq!(report.slots, 4);
        for user in &report.users {
            for r in &user.recovered {
                assert_eq!(
                    r.bytes.as_deref(),
                    Some(inst.library().unwrap().packet(r.packet))
                );
            }
        }
    }

    #[test]
    fn forged_schedule_reports_missing_side_info() {
        let inst = a22();
        let demand = DemandVector((0..6).collect());
        let mut schedule = inst.deliver(&demand).unwrap();
        // User 0 does not cache packet 1.
        schedule[0].summands[1] = PacketId::new(4, 1);
        let err = inst.decode(&demand, &schedule, 0).unwrap_err();
        assert_eq!(
            err,
            Error::MissingSideInfo {
                user: 0,
                slot: 0,
                file: 4,
                packet: 1
            }
        );
    }

    #[test]
    fn exhaustive_cap_and_sampling() {
        let inst = a22();
        assert_eq!(
            inst.verify_demands(VerifyMode::Exhaustive { cap: 1000 }, Detail::Summary),
            Err(Error::CapExceeded {
                needed: 46656,
                cap: 1000
            })
        );
        let s = inst
            .verify_demands(VerifyMode::Sample { count: 50, seed: 3 }, Detail::PerDemand)
            .unwrap();
        assert!(s.all_ok());
        assert_eq!(s.outcomes.len(), 50);
        assert_eq!(s.summary_line(), "demands=50 ok=50 rate=4/4");
        let again = inst
            .verify_demands(VerifyMode::Sample { count: 50, seed: 3 }, Detail::PerDemand)
            .unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn demand_index_is_lexicographic() {
        assert_eq!(DemandVector::from_index(0, 3, 2).0, [0, 0]);
        assert_eq!(DemandVector::from_index(1, 3, 2).0, [0, 1]);
        assert_eq!(DemandVector::from_index(5, 3, 2).0, [1, 2]);
        assert_eq!(DemandVector(vec![1, 2]).to_string(), "(1,2)");
    }

    #[test]
    fn library_is_seeded() {
        let a = Library::random(2, 3, 8, 1);
        let b = Library::random(2, 3, 8, 1);
        assert_eq!(a.packet(PacketId::new(1, 2)), b.packet(PacketId::new(1, 2)));
        assert_eq!(a.file(1).len(), 24);
        assert_ne!(a.packet(PacketId::new(0, 0)), a.packet(PacketId::new(0, 1)));
    }
}
