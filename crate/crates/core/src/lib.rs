//! Optimal pretty printing over a document language with choices.
//!
//! Documents are built in an [`Arena`] and printed with [`print`], which
//! picks the cheapest layout under a user-supplied [`CostFactory`] while
//! only exploring placements up to a computation width limit.
//!
//! ```
//! use frontier_pp::{print, Arena, Quadratic, ResolverConfig};
//!
//! let mut a = Arena::new();
//! let words = a.fill_sep(&["lorem", "ipsum", "dolor", "sit", "amet"]).unwrap();
//! let out = print(&a, words, &ResolverConfig::new(Quadratic { page_width: 12 })).unwrap();
//! assert_eq!(out.layout.lines(), ["lorem ipsum", "dolor sit", "amet"]);
//! ```

pub mod cost;
pub mod doc;
pub mod error;
pub mod formatters;
pub mod layout;
pub mod random;
pub mod reference;
pub mod resolver;
pub mod workloads;

pub use cost::{
    check_factory_validity, layout_cost, CostFactory, FactoryName, InvalidMaxLex, Linear, MaxOverflow, Quadratic,
    ValidityReport,
};
pub use doc::{Arena, Doc, DocKind};
pub use error::{DocError, ParseError, PrintError};
pub use formatters::StyleConfig;
pub use layout::Layout;
pub use resolver::{print, PrintResult, ResolverConfig};
