#!/usr/bin/env python3
"""Author the fixture datasets: 50-document corpus (42 families), query
ontology with labels/seeds, synonym lexicon, curation directives, 60-skill
taxonomy, 12 block-structured archetypes, and 10 assessments.

Run from the repo root: python scripts/make_fixtures.py
The verification pass at the end re-derives the key counts with the real
pipeline so drift is caught at authoring time.
"""

from __future__ import annotations

import csv
import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"

# ------------------------------------------------------------------
# corpus
# ------------------------------------------------------------------

EVIDENCE_ANALYZE = "The controller analyzes energy consumption of industrial processes."

DOCS = [
    # -- members that are relevant (P001..P018) --------------------------
    dict(
        doc_id="P001", family_id="F01", filing_year=2015,
        title="Energy management platform for industrial heating circuits",
        abstract=(
            "The plant integrates devices such as heat pumps and heat exchangers. "
            + EVIDENCE_ANALYZE
            + " An energy management routine balances thermal loads."
        ),
        claims=[
            "An energy management system comprising a heat pump circuit.",
            "The system of claim 1, wherein a controller modulates compressor speed.",
        ],
        description=(
            "The disclosure concerns energy management for factory heating. "
            "Conventional plants waste heat. Fig. 1 shows the layout."
        ),
        cpc_codes=["F24D19/10"], ipc_codes=["F24D"], status="granted",
    ),
    dict(
        doc_id="P002", family_id="F02", filing_year=2016,
        title="Adaptive control for forging line preheat",
        abstract=(
            "The preheat stage relies on devices such as heat pumps. "
            + EVIDENCE_ANALYZE
            + " The energy management module schedules furnace idling."
        ),
        claims=["A forging line preheater with staged burners."],
        cpc_codes=["B21J17/00"], ipc_codes=["B21J"], status="granted",
    ),
    dict(
        doc_id="P003", family_id="F03", filing_year=2017,
        title="Coolant loop supervisor for machining cells",
        abstract=(
            "Cooling loops employ devices such as heat pumps and plate heat exchangers. "
            "The module monitors energy management platforms remotely."
        ),
        claims=["A machining cell coolant loop with a buffer vessel."],
        cpc_codes=["B23Q11/12"], ipc_codes=["B23Q"], status="pending",
    ),
    dict(
        doc_id="P004", family_id="F04", filing_year=2018,
        title="Energy management controller for drying kilns",
        abstract=(
            "The dryer section uses devices such as heat pumps. "
            "Software simulates building energy performance in real time."
        ),
        claims=["A kiln controller that staggers heater banks."],
        cpc_codes=["F26B21/00"], ipc_codes=["F26B"], status="granted",
    ),
    dict(
        doc_id="P005", family_id="F05", filing_year=2019,
        title="Boiler fleet coordination apparatus",
        abstract=(
            "Boilers, furnaces, and other heating systems are monitored continuously. "
            "Retrofit adds devices such as heat pumps. "
            "The service forecasts electricity demand with statistical models. "
            "An energy management layer sequences boiler duty."
        ),
        claims=["A coordination apparatus for a boiler fleet."],
        cpc_codes=["F22B35/00"], ipc_codes=["F22B"], status="granted",
    ),
    dict(
        doc_id="P006", family_id="F06", filing_year=2020,
        title="Energy management mesh for composite curing ovens",
        abstract=(
            "The facility deploys networks including wireless mesh networks. "
            "Waste streams feed devices such as heat pumps."
        ),
        claims=["A curing oven network with redundant gateways."],
        cpc_codes=["B29C35/02"], ipc_codes=["B29C"], status="pending",
    ),
    dict(
        doc_id="P007", family_id="F07", filing_year=2021,
        title="Heat recovery with energy management supervision",
        abstract=(
            "Condenser banks include devices such as heat exchangers. "
            "The gateway configures smart metering software automatically."
        ),
        claims=["A heat recovery skid with bypass valves."],
        cpc_codes=["F28D21/00"], ipc_codes=["F28D"], status="granted",
    ),
    dict(
        doc_id="P008", family_id="F08", filing_year=2022,
        title="Demand shifting for laundry appliance parks",
        abstract=(
            "Appliances such as smart dryers are coordinated. "
            "Experts audit building insulation. "
            "The energy management profile shifts appliance duty cycles."
        ),
        claims=["A park controller that defers dryer cycles."],
        cpc_codes=["D06F58/30"], ipc_codes=["D06F"], status="granted",
    ),
    dict(
        doc_id="P009", family_id="F09", filing_year=2014,
        title="Peak shaving in steel forging shops",
        abstract=(
            "Heavy equipment such as forging presses consumes peak power. "
            "Exhaust reuse relies on devices such as plate heat exchangers. "
            "An energy management plan flattens peak demand."
        ),
        claims=["A forging shop load scheduler."],
        cpc_codes=["B21J9/20"], ipc_codes=["B21J"], status="granted",
    ),
    dict(
        doc_id="P010", family_id="F10", filing_year=2013,
        title="Energy management for regenerative drives",
        abstract=(
            "The inverter stage employs devices such as power converters. "
            "Braking energy returns to the bus."
        ),
        claims=["A regenerative drive with a shared DC bus."],
        cpc_codes=["H02P3/14"], ipc_codes=["H02P"], status="granted",
    ),
    dict(
        doc_id="P011", family_id="F11", filing_year=2012,
        title="Load shedding cabinet for press lines",
        abstract=(
            "Drive cabinets contain devices such as power converters. "
            "The energy management unit sheds nonessential loads."
        ),
        claims=["A cabinet with prioritized contactors."],
        cpc_codes=["H02J3/14"], ipc_codes=["H02J"], status="lapsed",
    ),
    dict(
        doc_id="P012", family_id="F12", filing_year=2011,
        title="Smart metering with energy management feedback",
        abstract=(
            "The metering subsystem comprises units such as smart meters. "
            "Tariff windows drive setpoint changes."
        ),
        claims=["A metering subsystem with tariff awareness."],
        cpc_codes=["G01D4/00"], ipc_codes=["G01D"], status="granted",
    ),
    dict(
        doc_id="P013", family_id="F13", filing_year=2018,
        title="Substation telemetry for machine shops",
        abstract=(
            "Substations install units such as smart meters and data concentrators. "
            "The retrofit targets machines, especially milling machines. "
            "Energy-efficient milling cycles cut consumption."
        ),
        claims=["A telemetry kit for shop substations."],
        cpc_codes=["H02J13/00"], ipc_codes=["H02J"], status="pending",
    ),
    dict(
        doc_id="P014", family_id="F14", filing_year=2019,
        title="Energy efficiency dashboard for machine shops",
        abstract=(
            "The console provides devices such as user interfaces. "
            "Shift summaries highlight idle spindles."
        ),
        claims=["A dashboard aggregating spindle telemetry."],
        cpc_codes=["G05B19/418"], ipc_codes=["G05B"], status="granted",
    ),
    dict(
        doc_id="P015", family_id="F15", filing_year=2020,
        title="Audit assistant for thermal plants",
        abstract=(
            "Control is delegated to devices such as thermostats. "
            "Analysts optimize industrial waste heat recovery. "
            "The audit quantifies energy efficiency gains."
        ),
        claims=["An audit assistant with sensor checklists."],
        cpc_codes=["G06Q50/06"], ipc_codes=["G06Q"], status="granted",
    ),
    dict(
        doc_id="P016", family_id="F16", filing_year=2021,
        title="Zoned comfort control for assembly halls",
        abstract=(
            "Comfort units such as smart thermostats are installed in occupied zones. "
            "Zone control raises energy efficiency in winter."
        ),
        claims=["A zoned controller with occupancy inputs."],
        cpc_codes=["F24F11/62"], ipc_codes=["F24F"], status="pending",
    ),
    dict(
        doc_id="P017", family_id="F17", filing_year=2022,
        title="Energy-efficient inspection lighting",
        abstract=(
            "The system reads sensors such as light sensors and pressure sensors. "
            "Lamps dim when bays are empty."
        ),
        claims=["An inspection bay lighting system."],
        cpc_codes=["H05B47/11"], ipc_codes=["H05B"], status="granted",
    ),
    dict(
        doc_id="P018", family_id="F18", filing_year=2023,
        title="Lamp certification rig",
        abstract=(
            "Inspection rigs use sensors such as light sensors. "
            "The rig certifies energy efficiency of lamps."
        ),
        claims=["A certification rig with integrating sphere."],
        cpc_codes=["G01J1/42"], ipc_codes=["G01J"], status="pending",
    ),
    # -- members that are NOT relevant (P019, P020) ----------------------
    dict(
        doc_id="P019", family_id="F19", filing_year=2016,
        title="Energy management toy racing set",
        abstract=(
            "A track set teaches children about power budgeting. "
            "Players analyze energy consumption of miniature vehicles."
        ),
        claims=["A toy track with charging bays."],
        cpc_codes=["A63H18/00"], ipc_codes=["A63H"], status="granted",
    ),
    dict(
        doc_id="P020", family_id="F20", filing_year=2018,
        title="Energy management themed board game",
        abstract=(
            "Cards represent generation assets. "
            "The energy management deck rewards balanced play."
        ),
        claims=["A board game with asset cards."],
        cpc_codes=["A63F3/00"], ipc_codes=["A63F"], status="unknown",
    ),
    # -- excluded by the NOT leaf (P021, P022) ---------------------------
    dict(
        doc_id="P021", family_id="F21", filing_year=2017,
        title="Energy management for hybrid powertrains",
        abstract=(
            "The combustion engine torque is blended with motor output. "
            "An energy management governor arbitrates the split."
        ),
        claims=["A hybrid powertrain governor."],
        cpc_codes=["B60W20/10"], ipc_codes=["B60W"], status="granted",
    ),
    dict(
        doc_id="P022", family_id="F22", filing_year=2019,
        title="Range extender control unit",
        abstract=(
            "An energy management strategy coordinates the combustion engine and battery. "
            "The extender runs at fixed speed."
        ),
        claims=["A range extender control unit."],
        cpc_codes=["B60W10/06"], ipc_codes=["B60W"], status="pending",
    ),
]

FILLERS = [
    ("P023", "F23", 2009, "Crankshaft induction hardening fixture",
     "A fixture aligns crank journals under the coil. Quench flow is pulsed."),
    ("P024", "F24", 2010, "Mould venting insert for appliance panels",
     "Sintered inserts vent trapped gas. Cycle times drop."),
    ("P025", "F25", 2011, "Composite layup roller with force feedback",
     "A roller compacts prepreg plies. Force is logged per pass."),
    ("P026", "F26", 2012, "Catheter guide wire brake",
     "A friction brake steadies the guide wire. The brake pad is ceramic."),
    ("P027", "F27", 2013, "Ladle slag detection probe",
     "A vibration probe flags slag carryover. Alerts reach the crane cab."),
    ("P028", "F28", 2014, "Tool presetter with optical gauge",
     "An optical gauge measures cutter runout. Offsets upload to the rack."),
    ("P029", "F29", 2015, "Surgical stapler cartridge counter",
     "A counter wheel tracks remaining staples. The window shows the count."),
    ("P030", "F30", 2016, "Forging die lubricant atomizer",
     "An atomizer coats the die between strokes. Droplet size is tuned."),
    ("P031", "F31", 2017, "Autoclave rack for composite spars",
     "A rack spaces spars for even cure. Thermocouples clip to each spar."),
    ("P032", "F32", 2018, "Infusion pump occlusion detector",
     "A strain gauge senses line occlusion. The pump halts and alarms."),
    ("P033", "F33", 2019, "Billet descaling water curtain",
     "A water curtain strips scale ahead of rolling. Nozzles self-clean."),
    ("P034", "F34", 2020, "Cavity pressure plug for moulds",
     "A quartz plug reads cavity pressure. Short shots are rejected inline."),
    ("P035", "F35", 2021, "Prosthetic liner texture roller",
     "A textured roller embosses silicone liners. Grip improves when damp."),
    ("P036", "F36", 2022, "Crank balancing drill pattern planner",
     "A planner places drill reliefs on counterweights. Vibration falls."),
    ("P037", "F37", 2023, "Resin flow front camera array",
     "Cameras watch the resin flow front. Dry spots trigger extra feed."),
    ("P038", "F38", 2012, "Bone screw torque limiter",
     "A slip clutch caps driver torque. Stripped threads are avoided."),
    ("P039", "F39", 2014, "Quench oil agitation manifold",
     "A manifold evens quench oil flow. Distortion scatter narrows."),
    ("P040", "F40", 2016, "Ejector pin wear monitor",
     "A proximity coil watches ejector pin travel. Sticking pins are flagged."),
    ("P041", "F41", 2018, "Stent crimping head with load cells",
     "Load cells profile the crimping force. Recipes are stored per stent."),
    ("P042", "F42", 2020, "Honeycomb core splice tape dispenser",
     "A dispenser lays splice tape on core edges. Overlap is constant."),
]

SIBLINGS = [
    ("P043", "F01", 2010, "Thermal buffer vessel for heating circuits",
     "A stratified tank stores hot water. Devices such as heat pumps feed the tank."),
    ("P044", "F02", 2011, "Forging line preheat burner nozzle",
     "A nozzle insert evens flame spread. Refractory life extends."),
    ("P045", "F03", 2012, "Plate pack gasket groove profile",
     "A groove profile seats gaskets without twist. Packs reseal after service."),
    ("P046", "F04", 2013, "Kiln airflow baffle set",
     "Baffles even the drying airflow. Moisture spread tightens."),
    ("P047", "F05", 2014, "Boiler refractory liner anchor",
     "An anchor clip holds liner bricks. Thermal cycling is tolerated."),
    ("P048", "F06", 2015, "Mesh gateway housing with drip shield",
     "A housing sheds condensation away from seals. Antennas stay dry."),
    ("P049", "F07", 2016, "Condenser fin hydrophilic coating",
     "A coating sheets condensate off fins. Airflow stays high when wet."),
    ("P050", "F08", 2017, "Dryer drum bearing cartridge",
     "A cartridge bearing swaps without drum removal. Downtime shrinks."),
]


def write_corpus() -> None:
    docs = list(DOCS)
    for doc_id, fam, year, title, abstract in FILLERS + SIBLINGS:
        docs.append(
            dict(
                doc_id=doc_id, family_id=fam, filing_year=year, title=title,
                abstract=abstract, claims=[f"A device according to the {title.lower()}."],
                cpc_codes=["B99Z99/00"], ipc_codes=["B99Z"], status="unknown",
            )
        )
    docs.sort(key=lambda d: d["doc_id"])
    with (FIX / "corpus_50.jsonl").open("w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(doc, sort_keys=True) + "\n")


# ------------------------------------------------------------------
# query fixtures
# ------------------------------------------------------------------

ONTOLOGY = {
    "name": "energy_mgmt",
    "scope": ["title", "abstract", "claims", "description"],
    "expression": {
        "AND": [
            {"OR": [{"lit": "energy management"}, {"regex": "(?i)energy[- ]efficien"}]},
            {"NOT": {"lit": "combustion engine"}},
        ]
    },
}

MEMBERS_RELEVANT = [f"P{n:03d}" for n in range(1, 19)]
MEMBERS_IRRELEVANT = ["P019", "P020"]
SEEDS = [f"P{n:03d}" for n in range(1, 10)] + ["P021"]


def write_query_fixtures() -> None:
    (FIX / "ontology_energy_mgmt.json").write_text(
        json.dumps(ONTOLOGY, indent=2) + "\n", encoding="utf-8"
    )
    with (FIX / "labels_energy_mgmt.csv").open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["doc_id", "relevant"])
        for doc_id in MEMBERS_RELEVANT:
            writer.writerow([doc_id, "true"])
        for doc_id in MEMBERS_IRRELEVANT:
            writer.writerow([doc_id, "false"])
    (FIX / "seeds_energy_mgmt.txt").write_text(
        "\n".join(SEEDS) + "\n", encoding="utf-8"
    )


SYNONYMS = [
    ("appliance", "device"),
    ("equipment", "machine"),
    ("controller", "device"),
    ("grid", "network"),
]

CURATION = [
    {"action": "approve", "target": "heat-pump--device"},
    {"action": "reject", "target": "user-interface--device"},
    {"action": "merge", "target": "smart-thermostat--unit", "into": "thermostat--device"},
]


def write_extraction_fixtures() -> None:
    with (FIX / "synonyms.tsv").open("w", encoding="utf-8") as fh:
        for syn, base in SYNONYMS:
            fh.write(f"{syn}\t{base}\n")
    (FIX / "curation_clusters.json").write_text(
        json.dumps(CURATION, indent=2) + "\n", encoding="utf-8"
    )


# ------------------------------------------------------------------
# skills taxonomy (60 records)
# ------------------------------------------------------------------

SKILLS = [
    # hard (25)
    ("sk-001", "advise on heating energy efficiency", "advise on heating systems energy efficiency", "hard", True),
    ("sk-002", "analyze energy consumption", "analyze energy consumption of industrial processes", "hard", True),
    ("sk-003", "design air conditioning", "design air conditioning installations", "hard", True),
    ("sk-004", "design solar energy systems", "design solar energy collection systems", "hard", True),
    ("sk-005", "design wind turbines", "design wind turbine rotor assemblies", "hard", True),
    ("sk-006", "inspect electrical supplies", "inspect electrical supplies and switchboards", "hard", True),
    ("sk-007", "install photovoltaic systems", "install photovoltaic panel systems", "hard", True),
    ("sk-008", "advise on utility consumption", "advise organisations on utility consumption", "hard", True),
    ("sk-009", "maintain heat exchangers", "maintain and descale heat exchangers", "hard", False),
    ("sk-010", "operate forging equipment", "operate steel forging press equipment", "hard", False),
    ("sk-011", "calibrate pressure sensors", "calibrate industrial pressure sensors", "hard", False),
    ("sk-012", "weld metal components", "weld structural metal components", "hard", False),
    ("sk-013", "machine composite materials", "machine fibre composite materials", "hard", False),
    ("sk-014", "design injection moulds", "design injection moulding tools", "hard", False),
    ("sk-015", "optimize waste heat recovery", "optimize industrial waste heat recovery", "hard", True),
    ("sk-016", "commission power converters", "commission grid tied power converters", "hard", False),
    ("sk-017", "service heat pumps", "service industrial heat pumps", "hard", False),
    ("sk-018", "audit building insulation", "audit building insulation", "hard", True),
    ("sk-019", "assemble battery packs", "assemble traction battery packs", "hard", False),
    ("sk-020", "plan production schedules", "plan weekly production schedules", "hard", False),
    ("sk-021", "supervise machining operations", "supervise precision machining operations", "hard", False),
    ("sk-022", "evaluate renewable contracts", "evaluate renewable energy supply contracts", "hard", True),
    ("sk-023", "test electric motors", "test industrial electric motors", "hard", False),
    ("sk-024", "read engineering drawings", "read mechanical engineering drawings", "hard", False),
    ("sk-025", "manage storage installations", "manage electricity storage installations", "hard", True),
    # digital (20)
    ("sk-026", "program logic controllers", "program programmable logic controllers", "digital", False),
    ("sk-027", "configure smart metering", "configure smart metering software", "digital", True),
    ("sk-028", "analyze sensor data", "analyze streamed sensor data", "digital", False),
    ("sk-029", "develop digital twins", "develop digital twin process models", "digital", False),
    ("sk-030", "administer industrial networks", "administer segmented industrial networks", "digital", False),
    ("sk-031", "monitor energy platforms", "monitor energy management platforms", "digital", True),
    ("sk-032", "apply machine learning", "apply machine learning regression methods", "digital", False),
    ("sk-033", "integrate iot devices", "integrate internet of things field devices", "digital", False),
    ("sk-034", "write data scripts", "write batch data processing scripts", "digital", False),
    ("sk-035", "manage cloud resources", "manage elastic cloud computing resources", "digital", False),
    ("sk-036", "simulate building energy", "simulate building energy performance", "digital", True),
    ("sk-037", "secure control systems", "secure industrial control system perimeters", "digital", False),
    ("sk-038", "visualize production dashboards", "visualize production dashboards for plant teams", "digital", False),
    ("sk-039", "maintain erp records", "maintain enterprise resource planning records", "digital", False),
    ("sk-040", "forecast electricity demand", "forecast electricity demand with models", "digital", True),
    ("sk-041", "deploy edge gateways", "deploy ruggedized edge computing gateways", "digital", False),
    ("sk-042", "query industrial databases", "query relational industrial databases", "digital", False),
    ("sk-043", "automate visual inspection", "automate quality inspection with vision systems", "digital", False),
    ("sk-044", "version engineering software", "version control engineering software changes", "digital", False),
    ("sk-045", "optimize with analytics", "optimize process parameters with analytics", "digital", True),
    # soft (15)
    ("sk-046", "communicate technical concepts", "communicate technical concepts to non specialists", "soft", False),
    ("sk-047", "coordinate teams", "coordinate cross functional teams", "soft", False),
    ("sk-048", "solve problems under pressure", "solve production problems under pressure", "soft", False),
    ("sk-049", "mentor colleagues", "mentor junior colleagues on the job", "soft", False),
    ("sk-050", "negotiate with suppliers", "negotiate terms with suppliers", "soft", False),
    ("sk-051", "manage deadlines", "manage overlapping project deadlines", "soft", False),
    ("sk-052", "adapt to change", "adapt quickly to changing priorities", "soft", False),
    ("sk-053", "lead improvement initiatives", "lead continuous improvement initiatives", "soft", False),
    ("sk-054", "document procedures", "document work procedures clearly", "soft", False),
    ("sk-055", "present to stakeholders", "present findings to stakeholders", "soft", False),
    ("sk-056", "collaborate remotely", "collaborate with distributed teams", "soft", False),
    ("sk-057", "assess risks critically", "think critically about operational risks", "soft", False),
    ("sk-058", "listen to operators", "listen actively to machine operators", "soft", False),
    ("sk-059", "plan own workload", "plan and prioritize own workload", "soft", False),
    ("sk-060", "resolve team conflicts", "resolve conflicts within teams", "soft", False),
]


def write_skills() -> None:
    with (FIX / "skills_taxonomy.csv").open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["skill_id", "label", "description", "category", "green"])
        for sid, label, desc, cat, green in SKILLS:
            writer.writerow([sid, label, desc, cat, "true" if green else "false"])


# ------------------------------------------------------------------
# archetypes (12, three blocks of four)
# ------------------------------------------------------------------

POOL_T = ["sk-006", "sk-009", "sk-010", "sk-011", "sk-012", "sk-017", "sk-019", "sk-023", "sk-024", "sk-026"]
POOL_E = ["sk-001", "sk-003", "sk-004", "sk-005", "sk-007", "sk-016", "sk-029", "sk-033", "sk-036", "sk-041"]
POOL_M = ["sk-002", "sk-008", "sk-015", "sk-018", "sk-020", "sk-022", "sk-025", "sk-031", "sk-038", "sk-040"]


def _pick(pool: list[str], drop: list[str], extra: str) -> list[str]:
    return sorted([s for s in pool if s not in drop] + [extra])


ARCHETYPES = [
    dict(
        archetype_id="arch-t1", title="Energy Maintenance Technician",
        description="Keeps heating and metering hardware of a plant serviceable.",
        macro_class_topdown="TechniciansOperators",
        binary_skills=_pick(POOL_T, ["sk-010", "sk-019"], "sk-027"),
        soft_targets={"sk-048": 3, "sk-054": 2, "sk-058": 3, "sk-059": 2},
    ),
    dict(
        archetype_id="arch-t2", title="HVAC Installation Technician",
        description="Installs and balances heating and ventilation equipment.",
        macro_class_topdown="TechniciansOperators",
        binary_skills=_pick(POOL_T, ["sk-012", "sk-023"], "sk-028"),
        soft_targets={"sk-046": 2, "sk-048": 3, "sk-054": 2, "sk-058": 3},
    ),
    dict(
        archetype_id="arch-t3", title="Production Machine Operator",
        description="Runs forming and machining equipment on the shop floor.",
        macro_class_topdown="TechniciansOperators",
        binary_skills=_pick(POOL_T, ["sk-006", "sk-017"], "sk-013"),
        soft_targets={"sk-052": 3, "sk-054": 2, "sk-058": 2, "sk-059": 3},
    ),
    dict(
        archetype_id="arch-t4", title="Electrical Systems Technician",
        description="Maintains switchgear, drives, and control wiring.",
        macro_class_topdown="TechniciansOperators",
        binary_skills=_pick(POOL_T, ["sk-009", "sk-024"], "sk-030"),
        soft_targets={"sk-048": 2, "sk-052": 2, "sk-054": 3, "sk-057": 2},
    ),
    dict(
        archetype_id="arch-e1", title="Energy Systems Engineer",
        description="Designs clean generation and recovery systems for plants.",
        macro_class_topdown="EngineeringProfessionals",
        binary_skills=_pick(POOL_E, ["sk-033", "sk-041"], "sk-032"),
        soft_targets={"sk-046": 3, "sk-047": 2, "sk-051": 3, "sk-057": 4},
    ),
    dict(
        archetype_id="arch-e2", title="Process Automation Engineer",
        description="Automates production lines and their supervisory layers.",
        macro_class_topdown="EngineeringProfessionals",
        binary_skills=_pick(POOL_E, ["sk-004", "sk-007"], "sk-034"),
        soft_targets={"sk-047": 3, "sk-051": 3, "sk-053": 2, "sk-057": 3},
    ),
    dict(
        archetype_id="arch-e3", title="Renewable Integration Engineer",
        description="Connects on-site renewables to factory grids.",
        macro_class_topdown="EngineeringProfessionals",
        binary_skills=_pick(POOL_E, ["sk-003", "sk-016"], "sk-035"),
        soft_targets={"sk-046": 3, "sk-051": 2, "sk-056": 3, "sk-057": 3},
    ),
    dict(
        archetype_id="arch-e4", title="Manufacturing Digitalization Engineer",
        description="Builds digital twins and data plumbing for production.",
        macro_class_topdown="EngineeringProfessionals",
        binary_skills=_pick(POOL_E, ["sk-001", "sk-005"], "sk-037"),
        soft_targets={"sk-047": 3, "sk-049": 2, "sk-053": 3, "sk-056": 3},
    ),
    dict(
        archetype_id="arch-m1", title="Plant Sustainability Manager",
        description="Owns the site environmental and energy programme.",
        macro_class_topdown="ManagersConsultants",
        binary_skills=_pick(POOL_M, ["sk-020", "sk-040"], "sk-039"),
        soft_targets={"sk-046": 4, "sk-050": 3, "sk-053": 4, "sk-055": 4, "sk-060": 3},
    ),
    dict(
        archetype_id="arch-m2", title="Energy Efficiency Consultant",
        description="Advises factories on consumption and tariffs.",
        macro_class_topdown="ManagersConsultants",
        binary_skills=_pick(POOL_M, ["sk-025", "sk-038"], "sk-042"),
        soft_targets={"sk-046": 4, "sk-050": 4, "sk-055": 4, "sk-057": 3},
    ),
    dict(
        archetype_id="arch-m3", title="Production Planning Manager",
        description="Plans output, staffing, and maintenance windows.",
        macro_class_topdown="ManagersConsultants",
        binary_skills=_pick(POOL_M, ["sk-008", "sk-018"], "sk-021"),
        soft_targets={"sk-047": 4, "sk-050": 3, "sk-051": 4, "sk-059": 3},
    ),
    dict(
        archetype_id="arch-m4", title="Industrial Data Manager",
        description="Runs the plant data platform and reporting.",
        macro_class_topdown="ManagersConsultants",
        binary_skills=_pick(POOL_M, ["sk-002", "sk-022"], "sk-044"),
        soft_targets={"sk-049": 3, "sk-051": 3, "sk-055": 3, "sk-056": 4},
    ),
]


def write_archetypes() -> None:
    (FIX / "archetypes.json").write_text(
        json.dumps(ARCHETYPES, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


# ------------------------------------------------------------------
# assessments (10)
# ------------------------------------------------------------------

def _arch(archetype_id: str) -> dict:
    return next(a for a in ARCHETYPES if a["archetype_id"] == archetype_id)


ASSESSMENTS = [
    dict(
        assessment_id="assess-01", archetype_id="arch-e1",
        selected_binary=_arch("arch-e1")["binary_skills"],
        soft_levels=dict(_arch("arch-e1")["soft_targets"]),
        created_at="2024-07-01T09:00:00+00:00",
    ),
    dict(
        assessment_id="assess-02", archetype_id="arch-t1",
        selected_binary=["sk-006", "sk-009", "sk-011", "sk-026"],
        soft_levels={"sk-048": 1, "sk-054": 2, "sk-058": 3, "sk-059": 0},
        created_at="2024-07-02T10:30:00+00:00",
    ),
    dict(
        assessment_id="assess-03", archetype_id="arch-m2",
        selected_binary=["sk-002", "sk-008", "sk-018", "sk-026", "sk-032"],
        soft_levels={"sk-046": 2, "sk-050": 4, "sk-055": 1, "sk-057": 3},
        created_at="2024-07-03T08:15:00+00:00",
    ),
    dict(
        assessment_id="assess-04", archetype_id="arch-t3",
        selected_binary=sorted(POOL_T + ["sk-013"]),
        soft_levels={"sk-052": 4, "sk-054": 4, "sk-058": 4, "sk-059": 4},
        created_at="2024-07-04T14:00:00+00:00",
    ),
    dict(
        assessment_id="assess-05", archetype_id="arch-e4",
        selected_binary=[],
        soft_levels={},
        created_at="2024-07-05T16:45:00+00:00",
    ),
    dict(
        assessment_id="assess-06", archetype_id="arch-m1",
        selected_binary=["sk-002", "sk-015", "sk-022", "sk-031"],
        soft_levels={"sk-046": 4, "sk-050": 3, "sk-053": 2, "sk-055": 4, "sk-060": 3},
        created_at="2024-07-06T11:20:00+00:00",
    ),
    dict(
        assessment_id="assess-07", archetype_id="arch-t2",
        selected_binary=["sk-006", "sk-010", "sk-017", "sk-019", "sk-024"],
        soft_levels={"sk-046": 2, "sk-048": 2, "sk-054": 1, "sk-058": 3},
        created_at="2024-07-07T09:55:00+00:00",
    ),
    dict(
        assessment_id="assess-08", archetype_id="arch-e2",
        selected_binary=_arch("arch-e2")["binary_skills"],
        soft_levels={"sk-047": 1, "sk-051": 1, "sk-053": 1, "sk-057": 1},
        created_at="2024-07-08T13:40:00+00:00",
    ),
    dict(
        assessment_id="assess-09", archetype_id="arch-m3",
        selected_binary=["sk-020", "sk-021", "sk-038"],
        soft_levels={"sk-047": 3, "sk-050": 2, "sk-051": 4, "sk-059": 2},
        created_at="2024-07-09T07:05:00+00:00",
    ),
    dict(
        assessment_id="assess-10", archetype_id="arch-t4",
        selected_binary=["sk-012", "sk-030"],
        soft_levels={"sk-048": 0, "sk-052": 1, "sk-054": 2, "sk-057": 2},
        created_at="2024-07-10T18:25:00+00:00",
    ),
]


def write_assessments() -> None:
    outdir = FIX / "assessments"
    outdir.mkdir(parents=True, exist_ok=True)
    for a in ASSESSMENTS:
        (outdir / f"{a['assessment_id']}.json").write_text(
            json.dumps(a, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )


# ------------------------------------------------------------------
# verification
# ------------------------------------------------------------------

def verify() -> None:
    sys.path.insert(0, str(ROOT / "src"))
    from skillgap.corpus import ingest_corpus
    from skillgap.patentset import compile_query, execute_query
    from skillgap.skillmap import HashedBagEmbedder, cosine, load_skills
    from skillgap.techner import (
        cluster_technologies,
        default_key_terms,
        expand_key_terms,
        extract_mentions,
    )

    corpus = ingest_corpus(FIX / "corpus_50.jsonl")
    fams = {d.family_id for d in corpus}
    print(f"documents={len(corpus)} families={len(fams)}")
    assert len(corpus) == 50 and len(fams) == 42

    # independent grep-style check of the query result
    def grep_member(doc) -> bool:
        text = " ".join(
            [doc.title, doc.abstract, " ".join(doc.claims), doc.description or ""]
        )
        low = text.lower()
        positive = "energy management" in low or re.search(r"(?i)energy[- ]efficien", text)
        return bool(positive) and "combustion engine" not in low

    grep_ids = {d.doc_id for d in corpus if grep_member(d)}
    query = compile_query(FIX / "ontology_energy_mgmt.json")
    engine_ids = execute_query(corpus, query).doc_ids
    print(f"grep={len(grep_ids)} engine={len(engine_ids)} equal={grep_ids == set(engine_ids)}")
    assert grep_ids == set(engine_ids) and len(engine_ids) == 20

    key_terms = expand_key_terms(default_key_terms(), FIX / "synonyms.tsv")
    mentions = []
    for doc_id in sorted(engine_ids):
        for s in corpus.sentences(doc_id):
            mentions.extend(extract_mentions(s, key_terms))
    clusters = cluster_technologies(mentions, {d.doc_id: d.family_id for d in corpus})
    print(f"mentions={len(mentions)} clusters={len(clusters)}")
    for c in clusters:
        print(f"  {c.cluster_id:34s} mentions={c.mention_count} families={c.family_count}")
    ids = {c.cluster_id for c in clusters}
    for directive in CURATION:
        assert directive["target"] in ids, directive
        if "into" in directive:
            assert directive["into"] in ids, directive

    # expected kept skill matches under the fallback embedder
    provider = HashedBagEmbedder()
    skills = load_skills(FIX / "skills_taxonomy.csv")
    by_id = {s.skill_id: s for s in skills}
    expectations = [
        ("P001", EVIDENCE_ANALYZE, "sk-002"),
        ("P003", "The module monitors energy management platforms remotely.", "sk-031"),
        ("P004", "Software simulates building energy performance in real time.", "sk-036"),
        ("P005", "The service forecasts electricity demand with statistical models.", "sk-040"),
        ("P007", "The gateway configures smart metering software automatically.", "sk-027"),
        ("P008", "Experts audit building insulation.", "sk-018"),
        ("P015", "Analysts optimize industrial waste heat recovery.", "sk-015"),
    ]
    for doc_id, text, expected in expectations:
        svec = provider.embed(text)
        scores = {
            s.skill_id: cosine(svec, provider.embed(s.description))
            for s in skills
            if s.category in ("hard", "digital")
        }
        best = max(sorted(scores), key=lambda k: scores[k])
        print(f"  {doc_id} -> {best} score={scores[best]:.4f} (expect {expected})")
        assert best == expected and scores[best] > 0.7, (doc_id, best, scores[best])

    # archetype blocks: within-block similarity must dominate between-block
    def jac(a, b):
        return len(set(a) & set(b)) / len(set(a) | set(b))

    blocks = [ARCHETYPES[0:4], ARCHETYPES[4:8], ARCHETYPES[8:12]]
    within = min(
        jac(x["binary_skills"], y["binary_skills"])
        for block in blocks
        for i, x in enumerate(block)
        for y in block[i + 1 :]
    )
    between = max(
        jac(x["binary_skills"], y["binary_skills"])
        for i, b1 in enumerate(blocks)
        for b2 in blocks[i + 1 :]
        for x in b1
        for y in b2
    )
    print(f"within-block min={within:.3f} between-block max={between:.3f}")
    assert within > between

    soft_used = set()
    for a in ARCHETYPES:
        soft_used |= set(a["soft_targets"])
    print(f"soft skills referenced: {len(soft_used)}/15")
    assert len(soft_used) == 15
    print("fixture verification passed")


def main() -> None:
    FIX.mkdir(parents=True, exist_ok=True)
    write_corpus()
    write_query_fixtures()
    write_extraction_fixtures()
    write_skills()
    write_archetypes()
    write_assessments()
    verify()


if __name__ == "__main__":
    main()
