//! Statistical logical-fault injection.
//!
//! Every faultable gate is followed, one experiment at a time, by each
//! Pauli error type. The noisy probability of the correct output divided by
//! the noiseless one is the site's relative PST; averaging over error types
//! at each (qubit, timestep) gives the sensitivity heatmap.

mod campaign;
mod heatmap;
mod site;

pub use campaign::{
    evaluate_sites, ideal_pst, run_campaign, Cell, SensitivityProfile, SensitivityRecord,
};
pub use heatmap::{export_heatmap, render_heatmap_svg, write_heatmap_csv};
pub use site::{enumerate_sites, error_types, inject, FaultSite, InjectionMode, Pauli};
