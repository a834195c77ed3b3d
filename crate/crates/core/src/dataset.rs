//! The shipped dataset, embedded at compile time.

pub const SHIPPED_ODLYZKO: &str = include_str!("../data/odlyzko_grh.csv");
pub const SHIPPED_FIELDS: &str = include_str!("../data/fields.json");
pub const SHIPPED_RAYCLASS: &str = include_str!("../data/rayclass.json");
pub const SHIPPED_UNIT_IMAGES: &str = include_str!("../data/unit_images.json");
pub const SHIPPED_SPLITTING: &str = include_str!("../data/splitting.json");

/// File names expected inside a data directory.
pub const ODLYZKO_FILE: &str = "odlyzko_grh.csv";
pub const FIELDS_FILE: &str = "fields.json";
pub const RAYCLASS_FILE: &str = "rayclass.json";
pub const UNIT_IMAGES_FILE: &str = "unit_images.json";
pub const SPLITTING_FILE: &str = "splitting.json";
