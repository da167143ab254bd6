package app.ui;

import android.database.Cursor;
import android.widget.CursorAdapter;

public class SwapCursorClosed {
    private CursorAdapter adapter;

    public void reload(Cursor fresh) {
        Cursor previous = adapter.swapCursor(fresh);
        if (previous != null) {
            previous.close();
        }
    }
}
