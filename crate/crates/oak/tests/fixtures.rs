use oak::descriptor::parse_descriptor;
use oak_core::fixtures::example_models;

#[test]
fn descriptor_files_match_the_bundled_models() {
    let files = [
        include_str!("../fixtures/descriptors/regressor_004.json"),
        include_str!("../fixtures/descriptors/classifier_016.json"),
        include_str!("../fixtures/descriptors/regressor_010.json"),
        include_str!("../fixtures/descriptors/regressor_011.json"),
        include_str!("../fixtures/descriptors/cluster_001.json"),
    ];
    for (text, expected) in files.into_iter().zip(example_models()) {
        assert_eq!(parse_descriptor(text).unwrap(), expected);
    }
}
