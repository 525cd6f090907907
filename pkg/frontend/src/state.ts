/**
 * Wizard state machine and local persistence. Forward navigation is gated:
 * an archetype must be chosen before the skill steps, and every soft skill
 * must be rated before submission. The draft survives page reloads in
 * localStorage until the user deletes their data.
 */

import type { Checklist, SubmissionResult } from './api.js';

export type StepId =
    | 'select-archetype'
    | 'hard-skills'
    | 'digital-skills'
    | 'soft-skills'
    | 'results';

export const STEP_ORDER: StepId[] = [
    'select-archetype',
    'hard-skills',
    'digital-skills',
    'soft-skills',
    'results',
];

export interface Draft {
    assessmentId: string; // client-generated; reused on retry so POSTs are idempotent
    archetypeId: string | null;
    selectedHard: string[];
    selectedDigital: string[];
    softLevels: Record<string, number>;
}

export interface WizardState {
    step: StepId;
    draft: Draft;
    ownerToken: string | null;
    tokenRevealed: boolean;
    result: SubmissionResult | null;
}

export type IdGenerator = () => string;

const STORAGE_KEY = 'skillgap.wizard.v1';

export function initialState(idgen: IdGenerator): WizardState {
    return {
        step: 'select-archetype',
        draft: {
            assessmentId: idgen(),
            archetypeId: null,
            selectedHard: [],
            selectedDigital: [],
            softLevels: {},
        },
        ownerToken: null,
        tokenRevealed: false,
        result: null,
    };
}

export function canAdvance(state: WizardState, checklist: Checklist | null): boolean {
    switch (state.step) {
        case 'select-archetype':
            return state.draft.archetypeId !== null;
        case 'hard-skills':
        case 'digital-skills':
            // declaring no skills in a category is a legitimate answer
            return checklist !== null;
        case 'soft-skills':
            if (!checklist) return false;
            return checklist.soft.every(
                (item) => state.draft.softLevels[item.skill_id] !== undefined,
            );
        case 'results':
            return false;
    }
}

export function advance(state: WizardState): WizardState {
    const index = STEP_ORDER.indexOf(state.step);
    if (index < 0 || index >= STEP_ORDER.length - 1) return state;
    return { ...state, step: STEP_ORDER[index + 1] };
}

export function back(state: WizardState): WizardState {
    const index = STEP_ORDER.indexOf(state.step);
    if (index <= 0 || state.step === 'results') return state;
    return { ...state, step: STEP_ORDER[index - 1] };
}

export function selectArchetype(state: WizardState, archetypeId: string): WizardState {
    if (state.draft.archetypeId === archetypeId) return state;
    // changing profession invalidates previous skill picks
    return {
        ...state,
        draft: {
            ...state.draft,
            archetypeId,
            selectedHard: [],
            selectedDigital: [],
            softLevels: {},
        },
    };
}

export function toggleSkill(
    state: WizardState,
    category: 'hard' | 'digital',
    skillId: string,
): WizardState {
    const key = category === 'hard' ? 'selectedHard' : 'selectedDigital';
    const current = state.draft[key];
    const next = current.includes(skillId)
        ? current.filter((s) => s !== skillId)
        : [...current, skillId];
    return { ...state, draft: { ...state.draft, [key]: next } };
}

export function setSoftLevel(state: WizardState, skillId: string, level: number): WizardState {
    return {
        ...state,
        draft: {
            ...state.draft,
            softLevels: { ...state.draft.softLevels, [skillId]: level },
        },
    };
}

export function withSubmission(
    state: WizardState,
    result: SubmissionResult,
): WizardState {
    return { ...state, step: 'results', result, tokenRevealed: false };
}

export function assessmentRequest(state: WizardState) {
    if (!state.draft.archetypeId) throw new Error('no archetype selected');
    return {
        assessment_id: state.draft.assessmentId,
        archetype_id: state.draft.archetypeId,
        selected_binary: [...state.draft.selectedHard, ...state.draft.selectedDigital].sort(),
        soft_levels: Object.fromEntries(
            Object.entries(state.draft.softLevels).sort(([a], [b]) => (a < b ? -1 : 1)),
        ),
    };
}

export function saveState(storage: Storage, state: WizardState): void {
    storage.setItem(STORAGE_KEY, JSON.stringify(state));
}

export function loadState(storage: Storage, idgen: IdGenerator): WizardState {
    const raw = storage.getItem(STORAGE_KEY);
    if (!raw) return initialState(idgen);
    try {
        const parsed = JSON.parse(raw) as WizardState;
        if (!parsed.draft || !STEP_ORDER.includes(parsed.step)) return initialState(idgen);
        return parsed;
    } catch {
        return initialState(idgen);
    }
}

export function clearState(storage: Storage): void {
    storage.removeItem(STORAGE_KEY);
}
