/**
 * HTML rendering for each wizard step. Pure string builders: no fetching, no
 * scoring; every displayed number is read off a service response field.
 */

import type {
    ArchetypeSummary,
    Checklist,
    ChecklistItem,
    GapReport,
} from './api.js';
import { STEP_ORDER, StepId, WizardState } from './state.js';

export function escapeHtml(value: unknown): string {
    return String(value)
        .replace(/&/g, '&amp;')
        .replace(/</g, '&lt;')
        .replace(/>/g, '&gt;')
        .replace(/"/g, '&quot;')
        .replace(/'/g, '&#39;');
}

const STEP_TITLES: Record<StepId, string> = {
    'select-archetype': 'Your profession',
    'hard-skills': 'Hard skills',
    'digital-skills': 'Digital skills',
    'soft-skills': 'Soft skills',
    results: 'Your results',
};

export interface ViewContext {
    state: WizardState;
    archetypes: ArchetypeSummary[];
    checklist: Checklist | null;
    busy: boolean;
    error: string | null;
    retriable: boolean;
    fieldErrors: Record<string, string>;
    canNext: boolean;
}

function progressBar(step: StepId): string {
    const items = STEP_ORDER.map((s, i) => {
        const current = s === step ? ' aria-current="step"' : '';
        const done = STEP_ORDER.indexOf(step) > i ? ' class="done"' : '';
        return `<li${done}${current}><span>${i + 1}</span> ${escapeHtml(STEP_TITLES[s])}</li>`;
    });
    return `<ol class="progress">${items.join('')}</ol>`;
}

function errorBanner(ctx: ViewContext): string {
    if (!ctx.error) return '';
    const retry = ctx.retriable
        ? '<button type="button" data-action="retry">Retry</button>'
        : '';
    return `<div class="banner" role="alert">${escapeHtml(ctx.error)} ${retry}</div>`;
}

function fieldError(ctx: ViewContext, field: string): string {
    const message = ctx.fieldErrors[field];
    if (!message) return '';
    return `<p class="field-error" data-field="${escapeHtml(field)}" role="alert">${escapeHtml(message)}</p>`;
}

function navButtons(ctx: ViewContext, submitLabel?: string): string {
    const backBtn =
        ctx.state.step === 'select-archetype'
            ? '<span></span>'
            : '<button type="button" data-action="back">Back</button>';
    const action = submitLabel ? 'submit' : 'next';
    const label = submitLabel ?? 'Next';
    const disabled = ctx.canNext && !ctx.busy ? '' : ' disabled';
    return `<div class="nav">${backBtn}<button type="button" data-action="${action}"${disabled}>${
        ctx.busy ? 'Sending…' : escapeHtml(label)
    }</button></div>`;
}

function archetypeStep(ctx: ViewContext): string {
    const rows = ctx.archetypes
        .map((a) => {
            const checked = ctx.state.draft.archetypeId === a.archetype_id ? ' checked' : '';
            return `<label class="choice">
  <input type="radio" name="archetype" value="${escapeHtml(a.archetype_id)}"${checked}
         data-action="select-archetype">
  <span class="choice-body">
    <strong>${escapeHtml(a.title)}</strong>
    <small>${escapeHtml(a.macro_class)}</small>
    <span class="desc">${escapeHtml(a.description)}</span>
  </span>
</label>`;
        })
        .join('\n');
    return `<fieldset>
  <legend>Select the professional profile you identify with</legend>
  ${fieldError(ctx, 'archetype_id')}
  ${rows}
</fieldset>${navButtons(ctx)}`;
}

function skillCheckboxes(
    ctx: ViewContext,
    category: 'hard' | 'digital',
    items: ChecklistItem[],
): string {
    const selected = new Set(
        category === 'hard' ? ctx.state.draft.selectedHard : ctx.state.draft.selectedDigital,
    );
    const rows = items
        .map((item) => {
            const checked = selected.has(item.skill_id) ? ' checked' : '';
            const green = item.green ? ' <span class="badge-green">green</span>' : '';
            return `<label class="choice">
  <input type="checkbox" value="${escapeHtml(item.skill_id)}"${checked}
         data-action="toggle-skill" data-category="${category}">
  <span>${escapeHtml(item.label)}${green}</span>
</label>`;
        })
        .join('\n');
    return `<fieldset>
  <legend>Tick the ${category} skills you currently possess</legend>
  ${fieldError(ctx, 'selected_binary')}
  ${rows}
</fieldset>${navButtons(ctx)}`;
}

function softStep(ctx: ViewContext): string {
    const items = ctx.checklist?.soft ?? [];
    const rows = items
        .map((item) => {
            const level = ctx.state.draft.softLevels[item.skill_id];
            const scale = item.scale ?? ['0', '1', '2', '3', '4'];
            const radios = scale
                .map((name, value) => {
                    const checked = level === value ? ' checked' : '';
                    return `<label class="level">
  <input type="radio" name="soft-${escapeHtml(item.skill_id)}" value="${value}"${checked}
         data-action="set-soft-level" data-skill="${escapeHtml(item.skill_id)}">
  <span>${value}<small>${escapeHtml(name)}</small></span>
</label>`;
                })
                .join('');
            return `<fieldset class="soft-skill" data-skill="${escapeHtml(item.skill_id)}">
  <legend>${escapeHtml(item.label)}</legend>
  <div class="levels" role="radiogroup">${radios}</div>
</fieldset>`;
        })
        .join('\n');
    return `<p>Rate each soft skill from 0 (none) to 4 (expert). All rows are required.</p>
${fieldError(ctx, 'soft_levels')}
${rows}
${navButtons(ctx, 'Submit assessment')}`;
}

function missingList(items: { skill_id: string; label: string; green: boolean }[]): string {
    if (!items.length) return '<p class="empty">Nothing missing in this category.</p>';
    const rows = items
        .map(
            (item) =>
                `<li data-skill-id="${escapeHtml(item.skill_id)}">${escapeHtml(item.label)}${
                    item.green ? ' <span class="badge-green">green</span>' : ''
                }</li>`,
        )
        .join('');
    return `<ul class="missing">${rows}</ul>`;
}

function softChart(report: GapReport): string {
    if (!report.soft_comparisons.length) return '<p class="empty">No soft-skill targets.</p>';
    const bars = report.soft_comparisons
        .map((row) => {
            const currentPct = (row.current / 4) * 100;
            const targetPct = (row.target / 4) * 100;
            return `<div class="chart-row" data-skill-id="${escapeHtml(row.skill_id)}">
  <span class="chart-label">${escapeHtml(row.skill_id)}</span>
  <span class="chart-track">
    <span class="chart-current" style="width:${currentPct}%"></span>
    <span class="chart-target" style="left:${targetPct}%"></span>
  </span>
  <span class="verdict verdict-${row.verdict}">${row.verdict}</span>
</div>`;
        })
        .join('\n');
    const tableRows = report.soft_comparisons
        .map(
            (row) =>
                `<tr data-skill-id="${escapeHtml(row.skill_id)}"><td>${escapeHtml(
                    row.skill_id,
                )}</td><td>${row.current}</td><td>${row.target}</td><td>${row.verdict}</td></tr>`,
        )
        .join('');
    return `<div class="chart" role="img" aria-label="soft skill comparison">${bars}</div>
<table class="chart-table" data-testid="soft-table">
  <caption>Soft skills: current vs target</caption>
  <thead><tr><th>Skill</th><th>Current</th><th>Target</th><th>Verdict</th></tr></thead>
  <tbody>${tableRows}</tbody>
</table>`;
}

function resultsStep(ctx: ViewContext): string {
    const result = ctx.state.result;
    if (!result) return '<p>No submission yet.</p>';
    const report = result.report;
    const titles = new Map(ctx.archetypes.map((a) => [a.archetype_id, a.title]));
    const nearest = report.nearest
        .map(
            (n, i) =>
                `<li data-archetype-id="${escapeHtml(n.archetype_id)}">
  <strong>${i + 1}. ${escapeHtml(titles.get(n.archetype_id) ?? n.archetype_id)}</strong>
  <span class="distance">distance ${n.distance.toFixed(3)}</span>
</li>`,
        )
        .join('');
    const token = ctx.state.tokenRevealed
        ? ''
        : `<div class="token-panel" data-testid="token-panel">
  <p>Keep this token to manage this assessment later; it is shown only once.</p>
  <code data-testid="owner-token">${escapeHtml(ctx.state.ownerToken ?? '')}</code>
  <button type="button" data-action="dismiss-token">I saved it</button>
</div>`;
    return `${token}
<section>
  <h2>Coverage</h2>
  <p class="coverage" data-testid="coverage" data-value="${report.coverage}">
    You already hold <strong>${Math.round(report.coverage * 100)}%</strong> of the ideal skill set.
  </p>
</section>
<section>
  <h2>Missing hard skills</h2>
  <div data-testid="missing-hard">${missingList(report.missing_binary.hard)}</div>
  <h2>Missing digital skills</h2>
  <div data-testid="missing-digital">${missingList(report.missing_binary.digital)}</div>
</section>
<section>
  <h2>Soft skills to improve or maintain</h2>
  ${softChart(report)}
</section>
<section>
  <h2>Closest professional profiles</h2>
  <ol class="nearest" data-testid="nearest">${nearest}</ol>
</section>
<div class="nav">
  <button type="button" class="danger" data-action="delete-data">Delete my data</button>
</div>`;
}

export function renderApp(ctx: ViewContext): string {
    let body: string;
    switch (ctx.state.step) {
        case 'select-archetype':
            body = archetypeStep(ctx);
            break;
        case 'hard-skills':
            body = skillCheckboxes(ctx, 'hard', ctx.checklist?.hard ?? []);
            break;
        case 'digital-skills':
            body = skillCheckboxes(ctx, 'digital', ctx.checklist?.digital ?? []);
            break;
        case 'soft-skills':
            body = softStep(ctx);
            break;
        case 'results':
            body = resultsStep(ctx);
            break;
    }
    return `<header>
  <h1>Worker skill self-assessment</h1>
  ${progressBar(ctx.state.step)}
</header>
${errorBanner(ctx)}
<main data-step="${ctx.state.step}">${body}</main>`;
}
