//! The suite document schema. Everything is referenced by name; the
//! resolver in [`super::registry`] turns names into objects.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fincore::LimitShape;
use crate::report::ProbeBudget;
use crate::topology::CoverKind;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetDoc>,
    /// Skip load-time law checks so that broken objects reach the checks
    /// that are meant to catch them.
    #[serde(default, skip_serializing_if = "is_false")]
    pub defer_validation: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, CategoryDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, FunctorDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub monoids: BTreeMap<String, MonoidDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub graphs: BTreeMap<String, GraphDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub covers: BTreeMap<String, CoverDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub adjunctions: BTreeMap<String, AdjunctionDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub linear_functors: BTreeMap<String, LinearDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functor_data: BTreeMap<String, FunctorDataDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub gluings: BTreeMap<String, GluingDoc>,
    #[serde(default)]
    pub checks: Vec<CheckDoc>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Budget fields left out inherit from the enclosing level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_module_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram_shapes: Option<Vec<LimitShape>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_test_morphisms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl BudgetDoc {
    pub fn apply(&self, budget: &mut ProbeBudget) {
        if let Some(n) = self.max_module_size {
            budget.max_module_size = n;
        }
        if let Some(s) = &self.diagram_shapes {
            budget.diagram_shapes.clone_from(s);
        }
        if let Some(n) = self.max_test_morphisms {
            budget.max_test_morphisms = n;
        }
        if let Some(s) = self.seed {
            budget.seed = s;
        }
    }
}

/// `"sets"`, `"pointed"`, or the name of a declared category whose
/// presheaves form the base.
pub type BaseDoc = String;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryDoc {
    Builtin(BuiltinCategory),
    Explicit(ExplicitCategory),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "builtin", rename_all = "snake_case", deny_unknown_fields)]
pub enum BuiltinCategory {
    Terminal,
    Discrete {
        size: usize,
    },
    ParallelPair,
    WalkingArrow,
    WalkingIso,
    /// The one-object category of a declared monoid.
    Delooping {
        monoid: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitCategory {
    pub objects: Vec<String>,
    /// Non-identity arrows; identities are named `1_<object>`.
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
    /// Composites `[g, f, g∘f]` of composable non-identity pairs.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub dom: String,
    pub cod: String,
    pub objects: BTreeMap<String, String>,
    /// Identity arrows may be omitted.
    #[serde(default)]
    pub arrows: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidDoc {
    Table(TableMonoid),
    Builtin(BuiltinMonoid),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableMonoid {
    pub elements: Vec<String>,
    pub unit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    /// Row-major over `elements`: `table[i][j]` is `elements[i]·elements[j]`.
    pub table: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinMonoid {
    pub builtin: BuiltinTable,
    /// Adjoin a fresh absorbing element `0`.
    #[serde(default, skip_serializing_if = "is_false")]
    pub with_zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BuiltinTable {
    Trivial,
    Zero,
    Boolean,
    Cyclic { order: usize },
    Saturating { top: usize },
}

/// A morphism given by element labels. On multi-object bases the same
/// label map is used at every object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub dom: String,
    pub cod: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionDoc {
    #[serde(rename = "self")]
    SelfAction {
        base: BaseDoc,
    },
    Diagonal {
        copies: usize,
        base: BaseDoc,
    },
    Presheaf {
        functor: String,
    },
    /// `sigma` names a morphism between monoids on the set base.
    Representation {
        sigma: String,
    },
    Digraph {
        monoid: String,
        source: String,
        target: String,
    },
    /// The action of the adjunction's domain base through its left adjoint.
    Restricted {
        adjunction: String,
        action: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// An object of the acted-on category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CarrierDoc {
    /// A plain or pointed set, on a one-object shape with no other arrows.
    Set {
        elements: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        point: Option<String>,
    },
    Graph {
        graph: String,
    },
    /// A right `M`-set on the delooping of `M`: `action[m][v] = v·m`.
    /// The unit may be omitted.
    MSet {
        elements: Vec<String>,
        action: BTreeMap<String, BTreeMap<String, String>>,
    },
    /// A presheaf given by its sets and, per non-identity arrow `f`, the
    /// restriction `F(tgt f) → F(src f)`.
    Presheaf {
        sets: BTreeMap<String, Vec<String>>,
        #[serde(default)]
        maps: BTreeMap<String, BTreeMap<String, String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<BTreeMap<String, String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDoc {
    Regular {
        over: String,
    },
    Free {
        action: String,
        over: String,
        carrier: CarrierDoc,
    },
    Trivial {
        action: String,
        over: String,
        carrier: CarrierDoc,
    },
    /// `table[object][scalar][element] = scalar·element`.
    Explicit {
        action: String,
        over: String,
        carrier: CarrierDoc,
        table: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
    pub base: String,
    pub legs: Vec<String>,
    /// Indices into `legs`; defaults to all of them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_subset: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AdjunctionDoc {
    Identity { base: BaseDoc },
    PrecomposeIso { functor: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LinearDoc {
    Identity {
        action: String,
    },
    Precompose {
        source: String,
        target: String,
        functor: String,
    },
    AdjoinPoint {
        action: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctorDataDoc {
    /// `c ↦ Hom(monoid, c)` on the cover's diagram.
    Corepresented { monoid: String, cover: String },
    /// The same set everywhere, identity maps.
    Constant { cover: String, set: Vec<String> },
    /// Values on the cover's diagram, whose objects are named `a`, `a<i>`
    /// and `a<i><j>` and whose arrows are `leg<i>`, `in<i><j>.0` and
    /// `in<i><j>.1`.
    Explicit {
        cover: String,
        objects: BTreeMap<String, Vec<String>>,
        arrows: BTreeMap<String, BTreeMap<String, String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GluingDoc {
    /// Free objects `C[M]` and hom-monoids glued along the adjunction;
    /// `cmon` and `extras` name monoids on the pointed base.
    Cmon {
        cmon: Vec<String>,
        #[serde(default)]
        extras: Vec<String>,
    },
    /// A category glued to itself along identities.
    Identity { category: String },
    Explicit {
        a: String,
        b: String,
        left: String,
        right: String,
        /// `[a, g, f]`: the transpose of `g: L a → b` is `f: a → R b`.
        transpositions: Vec<[String; 3]>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetDoc>,
    #[serde(flatten)]
    pub op: OpDoc,
}

/// Which modules a sweeping check runs over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModulesDoc {
    Named(Vec<String>),
    /// Every module up to isomorphism with at most `max_size` elements in
    /// each component.
    UpTo {
        action: String,
        max_size: usize,
    },
}

/// Which monoids a sweeping check runs over: declared names, or every
/// monoid up to isomorphism with at most `max_order` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidsDoc {
    Named(Vec<String>),
    UpTo { max_order: usize },
}

/// Expected verdict of a probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Refuted,
    Passed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum OpDoc {
    CheckCategoryLaws {
        category: String,
    },
    CheckFunctorLaws {
        functor: String,
    },
    CheckCommMonoid {
        monoid: String,
    },
    CheckMorphismLaws {
        morphism: String,
    },
    CheckActegoryCoherence {
        action: String,
    },
    CheckColimitPreservation {
        action: String,
    },
    CheckModuleLaws {
        module: String,
    },
    Pushout {
        left: String,
        right: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect_size: Option<usize>,
    },
    IsEpi {
        morphism: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<bool>,
    },
    IsFiniteType {
        morphism: String,
    },
    /// Cross-checks `is_epi` against an exhaustive search for two maps out
    /// of the codomain that agree after the morphism.
    EpiSearch {
        morphism: String,
        max_codomain: usize,
    },
    ExtendScalars {
        morphism: String,
        module: String,
    },
    AdjunctionTranspose {
        morphism: String,
        module: String,
        target: String,
    },
    UnitCounit {
        morphism: String,
        module: String,
        target: String,
    },
    AdjunctionSweep {
        action: String,
        monoids: MonoidsDoc,
        max_module: usize,
    },
    AssocIso {
        alpha: String,
        beta: String,
        gamma: String,
        modules: ModulesDoc,
    },
    PseudofunctorChecks {
        alpha: String,
        beta: String,
        modules: ModulesDoc,
    },
    BaseChangeIso {
        alpha: String,
        beta: String,
        modules: ModulesDoc,
    },
    /// Every comparison map buildable from the listed morphisms, over all
    /// modules up to `max_module`.
    ComparisonSweep {
        action: String,
        morphisms: Vec<String>,
        max_module: usize,
    },
    FlatnessProbe {
        morphism: String,
        action: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<Expect>,
    },
    ConservativityProbe {
        legs: Vec<String>,
        action: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<Expect>,
    },
    CheckFpqcCover {
        cover: String,
        action: String,
    },
    CheckSpectralImmersion {
        morphism: String,
        action: String,
    },
    CheckSpectralCover {
        cover: String,
        action: String,
    },
    PullbackCover {
        cover: String,
        along: String,
        action: String,
        #[serde(default = "default_kind")]
        kind: CoverKind,
    },
    ComposeCovers {
        cover: String,
        refinements: Vec<String>,
        action: String,
        #[serde(default = "default_kind")]
        kind: CoverKind,
    },
    PretopologyAudit {
        covers: Vec<String>,
        morphisms: Vec<String>,
        action: String,
        #[serde(default = "default_kind")]
        kind: CoverKind,
    },
    SheafEqualizerCheck {
        functor: String,
        cover: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect_sheaf: Option<bool>,
    },
    CheckThetaIso {
        morphism: String,
        adjunction: String,
        linear: String,
        /// Modules over `B(a)`.
        modules: ModulesDoc,
    },
    TransportCoverCheck {
        cover: String,
        adjunction: String,
        linear: String,
        action: String,
    },
    HomMonoid {
        monoid: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<String>,
    },
    FreeComm {
        monoid: String,
    },
    /// Monoids here are on the pointed base; `max_order` ranges over
    /// commutative monoids with zero.
    AdjunctionHatTilde {
        cmon: MonoidsDoc,
        targets: MonoidsDoc,
        /// Bound on the targets used for naturality.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        naturality_max: Option<usize>,
    },
    Glue {
        gluing: String,
    },
    Delta {
        gluing: String,
    },
    IsFieldObject {
        monoid: String,
        expect: bool,
    },
    CheckSchemeCondition3 {
        gluing: String,
        /// Start from the functor represented by this glued object.
        represented_by: String,
        /// Replacement values for chosen objects and arrows of the glued
        /// category.
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        objects: BTreeMap<String, Vec<String>>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        arrows: BTreeMap<String, BTreeMap<String, String>>,
        /// Field flags per `B` object; computed from the monoids when the
        /// gluing is built from them.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fields: Option<Vec<String>>,
    },
}

fn default_kind() -> CoverKind {
    CoverKind::Fpqc
}

impl OpDoc {
    /// The operation name as written in documents.
    pub fn name(&self) -> &'static str {
        match self {
            OpDoc::CheckCategoryLaws { .. } => "check_category_laws",
            OpDoc::CheckFunctorLaws { .. } => "check_functor_laws",
            OpDoc::CheckCommMonoid { .. } => "check_comm_monoid",
            OpDoc::CheckMorphismLaws { .. } => "check_morphism_laws",
            OpDoc::CheckActegoryCoherence { .. } => "check_actegory_coherence",
            OpDoc::CheckColimitPreservation { .. } => "check_colimit_preservation",
            OpDoc::CheckModuleLaws { .. } => "check_module_laws",
            OpDoc::Pushout { .. } => "pushout",
            OpDoc::IsEpi { .. } => "is_epi",
            OpDoc::IsFiniteType { .. } => "is_finite_type",
            OpDoc::EpiSearch { .. } => "epi_search",
            OpDoc::ExtendScalars { .. } => "extend_scalars",
            OpDoc::AdjunctionTranspose { .. } => "adjunction_transpose",
            OpDoc::UnitCounit { .. } => "unit_counit",
            OpDoc::AdjunctionSweep { .. } => "adjunction_sweep",
            OpDoc::AssocIso { .. } => "assoc_iso",
            OpDoc::PseudofunctorChecks { .. } => "pseudofunctor_checks",
            OpDoc::BaseChangeIso { .. } => "base_change_iso",
            OpDoc::ComparisonSweep { .. } => "comparison_sweep",
            OpDoc::FlatnessProbe { .. } => "flatness_probe",
            OpDoc::ConservativityProbe { .. } => "conservativity_probe",
            OpDoc::CheckFpqcCover { .. } => "check_fpqc_cover",
            OpDoc::CheckSpectralImmersion { .. } => "check_spectral_immersion",
            OpDoc::CheckSpectralCover { .. } => "check_spectral_cover",
            OpDoc::PullbackCover { .. } => "pullback_cover",
            OpDoc::ComposeCovers { .. } => "compose_covers",
            OpDoc::PretopologyAudit { .. } => "pretopology_audit",
            OpDoc::SheafEqualizerCheck { .. } => "sheaf_equalizer_check",
            OpDoc::CheckThetaIso { .. } => "check_theta_iso",
            OpDoc::TransportCoverCheck { .. } => "transport_cover_check",
            OpDoc::HomMonoid { .. } => "hom_monoid",
            OpDoc::FreeComm { .. } => "free_comm",
            OpDoc::AdjunctionHatTilde { .. } => "adjunction_hat_tilde",
            OpDoc::Glue { .. } => "glue",
            OpDoc::Delta { .. } => "delta",
            OpDoc::IsFieldObject { .. } => "is_field_object",
            OpDoc::CheckSchemeCondition3 { .. } => "check_scheme_condition3",
        }
    }
}
