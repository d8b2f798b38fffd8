/** Application bootstrap: prompt form on the left, the active tree panel on
 * the right, wordlist collapse and annotation toggles above it. */

import { ApiClient } from './api';
import { TreePanel } from './treePanel';

interface Elements {
  form: HTMLFormElement;
  prompt: HTMLInputElement;
  provider: HTMLInputElement;
  beamWidth: HTMLInputElement;
  beamLength: HTMLInputElement;
  toggles: HTMLElement;
  wordlist: HTMLSelectElement;
  view: HTMLElement;
}

function grab(): Elements {
  const byId = (id: string) => document.getElementById(id)!;
  return {
    form: byId('generate-form') as HTMLFormElement,
    prompt: byId('prompt') as HTMLInputElement,
    provider: byId('provider-id') as HTMLInputElement,
    beamWidth: byId('beam-width') as HTMLInputElement,
    beamLength: byId('beam-length') as HTMLInputElement,
    toggles: byId('toggles'),
    wordlist: byId('wordlist') as HTMLSelectElement,
    view: byId('tree-view'),
  };
}

export async function startApp(api = new ApiClient()): Promise<void> {
  const els = grab();
  let panel: TreePanel | null = null;

  const { wordlists } = await api.listWordlists();
  for (const name of wordlists) {
    const option = document.createElement('option');
    option.value = name;
    option.textContent = name;
    els.wordlist.appendChild(option);
  }

  els.form.addEventListener('submit', async (event) => {
    event.preventDefault();
    const created = await api.createTree({
      provider_id: els.provider.value,
      prompt: els.prompt.value,
      k: Number(els.beamWidth.value),
      n: Number(els.beamLength.value),
    });
    panel = new TreePanel(els.view, api, created.tree_id, {
      k: Number(els.beamWidth.value),
      n: Number(els.beamLength.value),
    });
    await panel.load();
  });

  for (const name of ['ranks', 'sentiment', 'groups'] as const) {
    const box = els.toggles.querySelector<HTMLInputElement>(`input[name=${name}]`);
    box?.addEventListener('change', () => panel?.setToggles({ [name]: box.checked }));
  }
  els.wordlist.addEventListener('change', () => {
    panel?.setToggles({ collapseWordlist: els.wordlist.value || null });
  });
}

if (typeof document !== 'undefined' && document.getElementById('generate-form')) {
  startApp().catch((error) => console.error(error));
}
