"""Build the bundled hand-held leaf blower demo project from scratch.

Walks through the whole data model: requirements with weights, properties,
technical solutions, the QFD/DPM/MIM matrices, modules and their interfaces,
a connection graph with fasteners and directions, concept matrices, and
module-set scores.  Writes the canonical project file used by the test suite
and the other demo scripts.
"""

from pathlib import Path

from mfdx import (
    AdcdGraph,
    Access,
    Concept,
    Connection,
    Criterion,
    CriterionKind,
    CustomerRequirement,
    Direction,
    Fastener,
    FastenerType,
    InteractionMatrix,
    Matrices,
    MimMatrix,
    Module,
    ModuleDriver,
    ModuleSet,
    ProductProperty,
    Project,
    ProjectConfig,
    TechnicalSolution,
    record_score,
    save_project,
    validate_project,
)
from mfdx.msasm import DEFAULT_CRITERIA, DEFAULT_CRITERIA_IDS

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "mfdx" / "fixtures"

D = ModuleDriver


def build_leaf_blower() -> Project:
    requirements = (
        CustomerRequirement("R01", "Quick assembly on the production line", 5),
        CustomerRequirement("R02", "Easy end-of-life disassembly", 4),
        CustomerRequirement("R03", "Low weight for handheld use", 3),
        CustomerRequirement("R04", "Quiet operation", 2),
        CustomerRequirement("R05", "Serviceable motor and switch", 4),
        CustomerRequirement("R06", "Low production cost", 5),
    )
    properties = (
        ProductProperty("P01", "Assembly time", "< 6 min"),
        ProductProperty("P02", "Disassembly time", "< 4 min"),
        ProductProperty("P03", "Mass", "< 2.5 kg"),
        ProductProperty("P04", "Noise level", "< 90 dB(A)"),
        ProductProperty("P05", "Service access", None),
        ProductProperty("P06", "Part count", "< 40 parts"),
    )
    solutions = (
        TechnicalSolution("TS01", "Clamshell housing", ("P01", "P06")),
        TechnicalSolution("TS02", "Universal motor", ("P04",)),
        TechnicalSolution("TS03", "Axial fan wheel", ("P04",)),
        TechnicalSolution("TS04", "Detachable blow tube", ("P01", "P02")),
        TechnicalSolution("TS05", "Trigger switch", ("P05",)),
        TechnicalSolution("TS06", "Power cord with strain relief", ("P05",)),
        TechnicalSolution("TS07", "Ergonomic handle shell", ("P03",)),
        TechnicalSolution("TS08", "Air intake grille", ("P02",)),
        TechnicalSolution("TS09", "Vibration damping mounts", ("P04",)),
        TechnicalSolution("TS10", "Cable routing channel", ("P05", "P06")),
    )
    modules = (
        Module("M01", "Housing", ("TS01",)),
        Module("M02", "Drive", ("TS02", "TS09")),
        Module("M03", "Fan", ("TS03",)),
        Module("M04", "Blow tube", ("TS04",)),
        Module("M05", "Controls", ("TS05",)),
        Module("M06", "Power", ("TS06", "TS10")),
        Module("M07", "Handle", ("TS07",)),
        Module("M08", "Intake", ("TS08",)),
    )
    module_sets = (
        ModuleSet("M01", "M02"),
        ModuleSet("M01", "M04"),
        ModuleSet("M01", "M07"),
        ModuleSet("M02", "M05"),
        ModuleSet("M03", "M08"),
    )

    qfd = {
        ("R01", "P01"): 9,
        ("R01", "P06"): 3,
        ("R02", "P02"): 9,
        ("R02", "P05"): 3,
        ("R03", "P03"): 9,
        ("R04", "P04"): 9,
        ("R05", "P05"): 9,
        ("R05", "P02"): 3,
        ("R06", "P06"): 9,
        ("R06", "P01"): 3,
    }
    dpm = {
        ("P01", "TS01"): 9,
        ("P01", "TS04"): 3,
        ("P02", "TS04"): 9,
        ("P02", "TS08"): 3,
        ("P03", "TS07"): 9,
        ("P04", "TS02"): 3,
        ("P04", "TS03"): 3,
        ("P04", "TS09"): 9,
        ("P05", "TS05"): 9,
        ("P05", "TS06"): 3,
        ("P05", "TS10"): 3,
        ("P06", "TS01"): 9,
        ("P06", "TS10"): 1,
    }
    mim = MimMatrix(
        {
            (D.CARRYOVER, "TS02"): 9,
            (D.COMMON_UNIT, "TS02"): 3,
            (D.SERVICE_MAINTENANCE, "TS02"): 3,
            (D.CARRYOVER, "TS03"): 3,
            (D.TECHNOLOGY_EVOLUTION, "TS03"): 3,
            (D.STYLING, "TS01"): 9,
            (D.PLANNED_DESIGN_CHANGES, "TS01"): 3,
            (D.DIFFERENT_SPECIFICATION, "TS04"): 9,
            (D.UPGRADING, "TS04"): 3,
            (D.SERVICE_MAINTENANCE, "TS05"): 9,
            (D.SEPARATE_TESTING, "TS05"): 3,
            (D.SERVICE_MAINTENANCE, "TS06"): 9,
            (D.SUPPLIER_AVAILABILITY, "TS06"): 3,
            (D.STYLING, "TS07"): 9,
            (D.RECYCLING, "TS08"): 3,
            (D.COMMON_UNIT, "TS09"): 3,
            (D.PROCESS_ORGANISATION, "TS10"): 3,
        }
    )
    interactions = InteractionMatrix(
        {
            ("TS01", "TS02"): 3.0,
            ("TS01", "TS04"): 1.0,
            ("TS01", "TS07"): 2.0,
            ("TS01", "TS08"): 2.0,
            ("TS02", "TS03"): 3.0,
            ("TS02", "TS09"): 3.0,
            ("TS03", "TS08"): 1.0,
            ("TS05", "TS06"): 2.0,
            ("TS05", "TS10"): 1.0,
            ("TS06", "TS10"): 3.0,
        }
    )

    concept_criteria = ("assembly_time", "ease_of_insertion", "tool_requirements", "access")
    pugh = {
        ("C2", "assembly_time"): 1,
        ("C2", "ease_of_insertion"): 1,
        ("C2", "tool_requirements"): 0,
        ("C2", "access"): -1,
        ("C3", "assembly_time"): 0,
        ("C3", "ease_of_insertion"): 1,
        ("C3", "tool_requirements"): 1,
        ("C3", "access"): 1,
    }
    numeric = {
        ("C1", "assembly_time"): 3,
        ("C1", "ease_of_insertion"): 3,
        ("C1", "tool_requirements"): 2,
        ("C1", "access"): 2,
        ("C2", "assembly_time"): 2,
        ("C2", "ease_of_insertion"): 2,
        ("C2", "tool_requirements"): 2,
        ("C2", "access"): 3,
        ("C3", "assembly_time"): 2,
        ("C3", "ease_of_insertion"): 1,
        ("C3", "tool_requirements"): 2,
        ("C3", "access"): 2,
    }

    criteria = DEFAULT_CRITERIA + (
        Criterion("assembly_time", "Assembly time", CriterionKind.DFA),
        Criterion("ease_of_insertion", "Ease of insertion", CriterionKind.DFA),
        Criterion("access", "Access", CriterionKind.BOTH),
    )
    concepts = (
        Concept("C1", "Current architecture", "As disassembled in the workshop", True),
        Concept("C2", "Snap-fit housing", "Housing halves and intake on snap-fits"),
        Concept("C3", "Service-first layout", "Controls and power reachable without opening the housing"),
    )

    graph = AdcdGraph(
        nodes=tuple(m.id for m in modules),
        edges=(
            Connection(ModuleSet("M01", "M02"), Direction.Z_NEG, Fastener(FastenerType.SCREW), Access.OBSTRUCTED),
            Connection(ModuleSet("M01", "M02"), Direction.X_POS, Fastener(FastenerType.ADHESIVE), Access.CLEAR,
                       "damping mounts glued to the shell"),
            Connection(ModuleSet("M01", "M08"), Direction.Z_NEG, Fastener(FastenerType.SNAP_FIT), Access.CLEAR),
            Connection(ModuleSet("M01", "M04"), Direction.X_POS, Fastener(FastenerType.CLIP), Access.CLEAR),
            Connection(ModuleSet("M01", "M07"), Direction.Z_NEG, Fastener(FastenerType.SCREW), Access.CLEAR),
            Connection(ModuleSet("M02", "M03"), Direction.Z_NEG, Fastener(FastenerType.SCREW), Access.CLEAR),
            Connection(ModuleSet("M05", "M07"), Direction.Z_NEG, Fastener(FastenerType.SNAP_FIT), Access.CLEAR),
            Connection(ModuleSet("M06", "M07"), Direction.Z_NEG,
                       Fastener(FastenerType.OTHER, label="strain relief nut", requires_tool=True), Access.CLEAR),
            Connection(ModuleSet("M05", "M06"), Direction.Z_NEG, Fastener(FastenerType.CLIP),
                       Access.PARTIALLY_OBSTRUCTED),
        ),
        precedence=(
            ("M02", "M03"),  # fan mounts onto the motor shaft
            ("M03", "M01"),  # housing closes over the assembled drive
            ("M05", "M07"),  # switch sits inside the handle shell
            ("M06", "M07"),
        ),
    )

    worst = ModuleSet("M01", "M02")
    records = tuple(
        record_score(worst, cid, [5]) for cid in DEFAULT_CRITERIA_IDS
    )
    best = ModuleSet("M03", "M08")
    best_scores = dict(zip(DEFAULT_CRITERIA_IDS, (2, 2, 2, 2, 2, 1)))
    records += tuple(record_score(best, cid, [score]) for cid, score in best_scores.items())
    handle = ModuleSet("M01", "M07")
    records += (
        record_score(handle, "accessibility", [3, 3]),
        record_score(handle, "assembly_direction", [2]),
        record_score(handle, "attachment_interface_connections", [2, 3]),  # split opinion, kept conservative
    )
    mid = ModuleSet("M02", "M05")
    records += tuple(record_score(mid, cid, [3]) for cid in DEFAULT_CRITERIA_IDS)
    # M01-M04 is declared but deliberately left unscored.

    return Project(
        name="Hand-held leaf blower",
        requirements=requirements,
        properties=properties,
        solutions=solutions,
        modules=modules,
        module_sets=module_sets,
        criteria=criteria,
        concepts=concepts,
        matrices=Matrices(qfd=qfd, dpm=dpm, mim=mim, interactions=interactions, pugh=pugh, numeric=numeric),
        adcd=graph,
        msasm=records,
        config=ProjectConfig(
            msasm_criteria=DEFAULT_CRITERIA_IDS,
            reusable_modules=("M02",),
        ),
    )


def build_minimal() -> Project:
    return Project(name="Minimal project")


def main() -> None:
    for name, project in (("leaf_blower", build_leaf_blower()), ("minimal", build_minimal())):
        report = validate_project(project)
        for issue in report.issues:
            print(f"  {issue.severity.value}: {issue.path}: {issue.message}")
        assert report.ok, f"{name} must validate cleanly"
        target = FIXTURES / f"{name}.mfdx.json"
        target.write_bytes(save_project(project))
        print(f"wrote {target}")


if __name__ == "__main__":
    main()
