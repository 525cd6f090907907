import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api.js';

function jsonResponse(payload: unknown, status = 200): Response {
    return new Response(JSON.stringify(payload), {
        status,
        headers: { 'Content-Type': 'application/json' },
    });
}

describe('ApiClient', () => {
    it('joins the base url without double slashes', async () => {
        const urls: string[] = [];
        const client = new ApiClient('http://svc:8080/', async (input) => {
            urls.push(String(input));
            return jsonResponse([]);
        });
        await client.listArchetypes();
        expect(urls).toEqual(['http://svc:8080/api/archetypes']);
    });

    it('maps 422 validation details onto field names', async () => {
        const client = new ApiClient('', async () =>
            jsonResponse(
                {
                    detail: [
                        { loc: ['body', 'soft_levels', 'sk-1'], msg: 'out of range' },
                        { loc: ['body', 'archetype_id'], msg: 'unknown' },
                    ],
                },
                422,
            ),
        );
        const error = await client
            .createAssessment(
                {
                    assessment_id: 'x',
                    archetype_id: 'bad',
                    selected_binary: [],
                    soft_levels: {},
                },
                'token',
            )
            .catch((e) => e);
        expect(error).toBeInstanceOf(ApiError);
        expect(error.status).toBe(422);
        expect(error.fieldErrors['soft_levels.sk-1']).toBe('out of range');
        expect(error.fieldErrors['archetype_id']).toBe('unknown');
    });

    it('sends the owner token header on delete', async () => {
        let token: string | null = null;
        const client = new ApiClient('', async (_input, init) => {
            token = new Headers(init?.headers).get('X-Owner-Token');
            return jsonResponse({ deleted: true });
        });
        await client.deleteAssessment('a-1', 's3cret');
        expect(token).toBe('s3cret');
    });
});
