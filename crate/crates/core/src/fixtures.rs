//! Bundled ontology, example descriptors and the reference queries.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::Task;
use crate::wrapper::{EvaluationSpec, InputSpec, ModelDescriptor, OutputSpec, StateSpec};

/// The bundled core ontology (Turtle).
pub const CORE_ONTOLOGY: &str = include_str!("../fixtures/core-ontology.ttl");

/// Two-hop expansion from `AgriKMap:Regressor_004`.
pub const Q1_REGRESSOR_004: &str = include_str!("../fixtures/queries/q1_regressor_004.rq");
/// Transformations of `AgriOnt:SoilPH` and everything said about them.
pub const Q2_SOILPH_TRANSFORMATIONS: &str = include_str!("../fixtures/queries/q2_soilph_transformations.rq");
/// Models predicting a `AgriOnt:CropYield` instance.
pub const Q3_CROP_YIELD_MODELS: &str = include_str!("../fixtures/queries/q3_crop_yield_models.rq");
/// Models with an instance in state `AgriOnt:SheathRot`.
pub const Q4_SHEATH_ROT: &str = include_str!("../fixtures/queries/q4_sheath_rot.rq");

pub const EXAMPLE_QUERIES: [&str; 4] = [Q1_REGRESSOR_004, Q2_SOILPH_TRANSFORMATIONS, Q3_CROP_YIELD_MODELS, Q4_SHEATH_ROT];

fn input(concept: &str, transformation: &str) -> InputSpec {
    InputSpec::new(concept, transformation)
}

fn output(concept: &str) -> Option<OutputSpec> {
    Some(OutputSpec { concept: concept.into(), transformation: "identity".into() })
}

/// Five example models, in ingestion order: a soil-pH regressor, a rice
/// disease classifier, two crop-yield regressors and a field clustering.
pub fn example_models() -> Vec<ModelDescriptor> {
    let mut soil = ModelDescriptor::new("Regressor_004", Task::Regression, "kNN-regression");
    soil.inputs = vec![input("SoilPH", "min"), input("SoilPH", "max"), input("SoilPH", "avg")];
    soil.output = output("SoilPH");
    soil.source = Some(String::from("Soil pH estimated from neighbouring fields"));

    let mut rice = ModelDescriptor::new("Classifier_016", Task::Classification, "rule-based-classifier");
    rice.inputs = vec![input("LesionColor", "identity"), input("LesionShape", "identity"), input("LesionSize", "identity")];
    rice.output = output("RiceDisease");
    rice.states = ["Leaf brown spot", "Rice blast", "Sheath rot", "Bacterial blight"]
        .into_iter()
        .map(|v| StateSpec { concept: "RiceDisease".into(), value: v.into() })
        .collect();
    rice.source = Some(String::from("Rice disease identification from lesion features"));

    let mut forest = ModelDescriptor::new("Regressor_010", Task::Regression, "random-forest");
    forest.inputs = vec![
        input("Rainfall", "avg"),
        input("Temperature", "avg"),
        input("Nitrogen", "identity"),
        input("SeedRate", "identity"),
    ];
    forest.output = output("CropYield");
    forest.evaluation = Some(EvaluationSpec { metric: "rmse".into(), value: 0.42 });

    let mut linear = ModelDescriptor::new("Regressor_011", Task::Regression, "linear-regression");
    linear.inputs = vec![input("SoilMoisture", "avg"), input("SoilPH", "avg"), input("Nitrogen", "identity")];
    linear.output = output("CropYield");

    let mut fields = ModelDescriptor::new("Cluster_001", Task::Clustering, "k-means");
    fields.inputs = ["SoilPH", "SeedRate", "Nitrogen", "Wheat", "MeanYield"]
        .into_iter()
        .map(|c| input(c, "identity"))
        .collect();

    vec![soil, rice, forest, linear, fields]
}
